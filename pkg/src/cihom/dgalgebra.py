"""Finite-dimensional graded DG algebras.

Three families are constructed here, all over an exact field k:

* exterior algebras on c degree-1 generators, carrying their Hopf
  structure (comultiplication sending each generator e to e⊗1 + 1⊗e and
  the antipode a ↦ (-1)^{|a|} a);
* artinian graded quotient rings k[x_1..x_n]/(f_1..f_n), viewed as DG
  algebras concentrated in homological degree 0;
* Koszul complexes on a list of elements of such a ring.

An algebra is a basis with homological degrees, a dense multiplication
tensor mult[i,j,k] (coefficient of b_k in b_i·b_j), a differential
matrix (columns are images of basis vectors), and an augmentation onto
k whose kernel is spanned by the non-unit basis vectors.

Sign conventions are homological throughout: the differential has
degree -1 and satisfies the graded Leibniz rule
∂(ab) = ∂(a)b + (-1)^{|a|} a ∂(b).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .fields import PrimeField
from .linalg import Matrix
from .poly import Poly, PolyRing, groebner_ideal, mono_div, mono_mul, normal_form, parse_polynomial


class DGError(ValueError):
    pass


@dataclass
class HopfData:
    """Comultiplication and antipode on a finite-dimensional graded algebra.

    delta[a][p, q] is the coefficient of b_p ⊗ b_q in Δ(b_a); the
    antipode is a matrix acting on basis columns.
    """

    delta: np.ndarray
    antipode: np.ndarray


@dataclass
class FiniteDGAlgebra:
    field: object
    degrees: tuple
    labels: tuple
    unit_index: int
    mult: np.ndarray
    diff: Matrix
    hopf: HopfData | None = None
    generators: tuple = ()
    name: str = "A"

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def __post_init__(self):
        self._left_mult = None
        self._by_degree = None

    def basis_by_degree(self) -> dict:
        if self._by_degree is None:
            out: dict = {}
            for i, d in enumerate(self.degrees):
                out.setdefault(d, []).append(i)
            self._by_degree = out
        return self._by_degree

    def left_mult(self, i: int) -> Matrix:
        """Matrix of left multiplication by basis vector i on column vectors."""
        if self._left_mult is None:
            self._left_mult = [None] * self.dim
        if self._left_mult[i] is None:
            # mult[i, j, k]: contribution of b_i·b_j to b_k; columns indexed by j
            self._left_mult[i] = Matrix(self.field, self.mult[i].T.copy())
        return self._left_mult[i]

    def multiply(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Product of two coefficient vectors."""
        fld = self.field
        out = fld.zeros((self.dim,))
        for i in np.flatnonzero(u != fld.zero):
            contrib = fld.dot(self.mult[int(i)].T, v)
            out = fld.normalize(out + u[int(i)] * contrib)
        return out

    def unit_vector(self) -> np.ndarray:
        v = self.field.zeros((self.dim,))
        v[self.unit_index] = self.field.one
        return v

    def augmentation(self, v: np.ndarray):
        """Image of a coefficient vector under the augmentation onto k."""
        return v[self.unit_index]

    def maximal_ideal_indices(self):
        return [i for i in range(self.dim) if i != self.unit_index]

    def degree_zero_ideal_indices(self):
        """Basis indices of the degree-0 part of the augmentation ideal."""
        return [i for i in self.maximal_ideal_indices() if self.degrees[i] == 0]

    def element_str(self, v: np.ndarray) -> str:
        fld = self.field
        parts = []
        for i in range(self.dim):
            if v[i] != fld.zero:
                parts.append(f"{fld.scalar_str(v[i])}*{self.labels[i]}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"<{self.name}: dim {self.dim} over {self.field}>"


# ---------------------------------------------------------------------------
# tensor-square arithmetic, needed for Hopf constructions and checks


def tensor_square_product(A: FiniteDGAlgebra, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Product in A ⊗ A with the Koszul sign: (a⊗b)(c⊗d) = (-1)^{|b||c|} ac⊗bd.

    Elements of A⊗A are (dim, dim) coefficient arrays.
    """
    fld = A.field
    out = fld.zeros((A.dim, A.dim))
    nz_x = np.argwhere(X != fld.zero)
    nz_y = np.argwhere(Y != fld.zero)
    for p1, q1 in nz_x:
        for p2, q2 in nz_y:
            sign = -1 if (A.degrees[q1] * A.degrees[p2]) % 2 else 1
            c = fld.mul(X[p1, q1], Y[p2, q2])
            if sign < 0:
                c = fld.neg(c)
            left = A.mult[int(p1), int(p2)]
            right = A.mult[int(q1), int(q2)]
            out = fld.normalize(out + c * np.outer(left, right))
    return out


# ---------------------------------------------------------------------------
# exterior algebras


def exterior_algebra(c: int, field) -> FiniteDGAlgebra:
    """The exterior algebra on c generators of homological degree 1.

    Basis is indexed by subsets of {1..c} ordered by (size, bitmask);
    the Hopf structure has Δ(e_i) = e_i⊗1 + 1⊗e_i and σ(a) = (-1)^{|a|} a.
    Characteristic 2 is rejected: every sign computed downstream would
    collapse.
    """
    if isinstance(field, PrimeField) and field.characteristic == 2:
        raise DGError("exterior algebras over characteristic 2 are not supported")
    if c < 0:
        raise DGError("generator count must be nonnegative")
    masks = sorted(range(1 << c), key=lambda m: (bin(m).count("1"), m))
    index = {m: i for i, m in enumerate(masks)}
    dim = len(masks)
    degrees = tuple(bin(m).count("1") for m in masks)

    def label(m):
        if m == 0:
            return "1"
        return "e" + "".join(str(i + 1) for i in range(c) if m >> i & 1)

    labels = tuple(label(m) for m in masks)
    fld = field
    mult = fld.zeros((dim, dim, dim))
    for i, mi in enumerate(masks):
        for j, mj in enumerate(masks):
            if mi & mj:
                continue
            # sign: count inversions between the two sorted index sets
            inv = 0
            for a in range(c):
                if mi >> a & 1:
                    inv += bin(mj & ((1 << a) - 1)).count("1")
            k = index[mi | mj]
            mult[i, j, k] = fld.one if inv % 2 == 0 else fld.neg(fld.one)
    diff = Matrix.zeros(fld, dim, dim)

    A = FiniteDGAlgebra(
        field=fld,
        degrees=degrees,
        labels=labels,
        unit_index=index[0],
        mult=mult,
        diff=diff,
        generators=tuple(index[1 << i] for i in range(c)),
        name=f"Lambda({c})",
    )

    # comultiplication: extend Δ(e_i) = e_i⊗1 + 1⊗e_i multiplicatively
    delta = fld.zeros((dim, dim, dim))
    unit = index[0]
    delta[unit, unit, unit] = fld.one
    gen_delta = []
    for i in range(c):
        D = fld.zeros((dim, dim))
        gi = index[1 << i]
        D[gi, unit] = fld.one
        D[unit, gi] = fld.one
        gen_delta.append(D)
    for bi, m in enumerate(masks):
        if m == 0:
            continue
        cur = None
        for i in range(c):
            if m >> i & 1:
                cur = gen_delta[i] if cur is None else tensor_square_product(A, cur, gen_delta[i])
        delta[bi] = cur
    antipode = fld.zeros((dim, dim))
    for i, d in enumerate(degrees):
        antipode[i, i] = fld.one if d % 2 == 0 else fld.neg(fld.one)
    A.hopf = HopfData(delta=delta, antipode=Matrix(fld, antipode))
    return A


# ---------------------------------------------------------------------------
# artinian graded quotient rings


class QuotientRing:
    """k[x_1..x_n]/(f_1..f_n), artinian and graded, as a degree-0 DG algebra.

    The relations must be homogeneous of degree at least 2 (no linear
    part), equal in number to the variables, and cut out a
    finite-dimensional quotient; these conditions make the quotient an
    artinian graded complete intersection with embedding dimension n.
    """

    def __init__(self, field, names, relations):
        names = tuple(names)
        self.poly_ring = PolyRing(field, names)
        rels = []
        for r in relations:
            p = parse_polynomial(self.poly_ring, r) if isinstance(r, str) else r
            rels.append(p)
        if len(rels) != len(names):
            raise DGError(
                f"need exactly {len(names)} relations for {len(names)} variables, got {len(rels)}"
            )
        for p in rels:
            if p.is_zero():
                raise DGError("zero relation")
            if not p.is_homogeneous():
                raise DGError(f"relation {p} is not homogeneous")
            if p.degree_or_none() < 2:
                raise DGError(f"relation {p} has a linear part")
        self.field = field
        self.names = names
        self.relations = rels
        self.groebner = groebner_ideal(rels, self.poly_ring)

        lead_exponents = [g.lead()[0] for g in self.groebner.gens]
        n = len(names)
        bounds = []
        for i in range(n):
            pure = [m[i] for m in lead_exponents if all(e == 0 for j, e in enumerate(m) if j != i)]
            if not pure:
                raise DGError("quotient is not artinian (no pure power of "
                              f"{names[i]} in the leading term ideal)")
            bounds.append(min(pure))
        monos = []

        def rec(i, acc):
            if i == n:
                m = tuple(acc)
                if all(mono_div(m, le) is None for le in lead_exponents):
                    monos.append(m)
                return
            for e in range(bounds[i]):
                rec(i + 1, acc + [e])

        rec(0, [])
        monos.sort(key=lambda m: (sum(m), m))
        self.monomials = monos
        self.mono_index = {m: i for i, m in enumerate(monos)}
        dim = len(monos)

        fld = field
        mult = fld.zeros((dim, dim, dim))
        for i, mi in enumerate(monos):
            for j, mj in enumerate(monos):
                prod = Poly(self.poly_ring, {mono_mul(mi, mj): fld.one})
                nf = normal_form(prod, self.groebner)
                for m, cc in nf.terms.items():
                    mult[i, j, self.mono_index[m]] = cc

        def label(m):
            if sum(m) == 0:
                return "1"
            return "*".join(
                (f"{nm}^{e}" if e > 1 else nm) for nm, e in zip(names, m) if e
            )

        self.algebra = FiniteDGAlgebra(
            field=fld,
            degrees=tuple(0 for _ in monos),
            labels=tuple(label(m) for m in monos),
            unit_index=self.mono_index[(0,) * n],
            mult=mult,
            diff=Matrix.zeros(fld, dim, dim),
            name="k[" + ",".join(names) + "]/(" + ", ".join(str(r) for r in rels) + ")",
        )

    @property
    def dim(self) -> int:
        return len(self.monomials)

    @property
    def embedding_dimension(self) -> int:
        return len(self.names)

    @property
    def codimension(self) -> int:
        return len(self.relations)

    def poly_to_vector(self, p: Poly) -> np.ndarray:
        """Coefficient vector of the normal form of p."""
        nf = normal_form(p, self.groebner)
        v = self.field.zeros((self.dim,))
        for m, c in nf.terms.items():
            v[self.mono_index[m]] = c
        return v

    def parse(self, s: str) -> Poly:
        return parse_polynomial(self.poly_ring, s)

    def variable_vector(self, i: int) -> np.ndarray:
        return self.poly_to_vector(self.poly_ring.variable(i))

    def __repr__(self):
        return f"<QuotientRing {self.algebra.name}, dim {self.dim}>"


# ---------------------------------------------------------------------------
# Koszul complexes


@dataclass
class KoszulComplex:
    """Koszul complex on a list of ring elements, as a DG algebra.

    The underlying space is R ⊗ Λ(s generators); basis pairs are
    (ring monomial, subset).  ∂(e_i) is the i-th element and ∂ extends
    as a derivation.
    """

    ring: QuotientRing
    elements: list
    algebra: FiniteDGAlgebra = dc_field(default=None)
    index: dict = dc_field(default=None)
    pairs: list = dc_field(default=None)

    def pair_index(self, ring_idx: int, mask: int) -> int:
        return self.index[(ring_idx, mask)]


def koszul_complex(qr: QuotientRing, elements) -> KoszulComplex:
    field = qr.field
    if isinstance(field, PrimeField) and field.characteristic == 2:
        raise DGError("Koszul complexes over characteristic 2 are not supported")
    elems = []
    for e in elements:
        p = qr.parse(e) if isinstance(e, str) else e
        v = qr.poly_to_vector(p)
        if v[qr.algebra.unit_index] != field.zero:
            raise DGError(f"Koszul element {p} is not in the maximal ideal")
        elems.append(v)
    s = len(elems)
    rdim = qr.dim
    pairs = []
    for mask in sorted(range(1 << s), key=lambda m: (bin(m).count("1"), m)):
        for ri in range(rdim):
            pairs.append((ri, mask))
    index = {pm: i for i, pm in enumerate(pairs)}
    dim = len(pairs)
    fld = field
    degrees = tuple(bin(mask).count("1") for (_ri, mask) in pairs)

    def ext_sign(mi, mj):
        inv = 0
        for a in range(s):
            if mi >> a & 1:
                inv += bin(mj & ((1 << a) - 1)).count("1")
        return 1 if inv % 2 == 0 else -1

    mult = fld.zeros((dim, dim, dim))
    for i, (ri, mi) in enumerate(pairs):
        for j, (rj, mj) in enumerate(pairs):
            if mi & mj:
                continue
            sign = ext_sign(mi, mj)
            rprod = qr.algebra.mult[ri, rj]
            mk = mi | mj
            for rk in np.flatnonzero(rprod != fld.zero):
                c = rprod[int(rk)] if sign > 0 else fld.neg(rprod[int(rk)])
                mult[i, j, index[(int(rk), mk)]] = c

    diff = fld.zeros((dim, dim))
    for j, (rj, mj) in enumerate(pairs):
        bits = [a for a in range(s) if mj >> a & 1]
        for pos, a in enumerate(bits):
            # ∂(r·e_S) = Σ_t (-1)^t (r·x_{j_t})·e_{S minus j_t}
            sign = 1 if pos % 2 == 0 else -1
            prod = qr.algebra.multiply(_basis_vec(fld, rdim, rj), elems[a])
            rest = mj & ~(1 << a)
            for rk in np.flatnonzero(prod != fld.zero):
                c = prod[int(rk)] if sign > 0 else fld.neg(prod[int(rk)])
                i = index[(int(rk), rest)]
                diff[i, j] = fld.add(diff[i, j], c)

    def label(ri, mask):
        rl = qr.algebra.labels[ri]
        if mask == 0:
            return rl
        el = "e" + "".join(str(a + 1) for a in range(s) if mask >> a & 1)
        return el if rl == "1" else f"{rl}*{el}"

    algebra = FiniteDGAlgebra(
        field=fld,
        degrees=degrees,
        labels=tuple(label(ri, m) for (ri, m) in pairs),
        unit_index=index[(qr.algebra.unit_index, 0)],
        mult=mult,
        diff=Matrix(fld, diff),
        name=f"Koszul({qr.algebra.name}; {s} elements)",
    )
    return KoszulComplex(ring=qr, elements=elems, algebra=algebra, index=index, pairs=pairs)


def _basis_vec(field, n, i):
    v = field.zeros((n,))
    v[i] = field.one
    return v


def koszul_on_maximal_ideal(qr: QuotientRing) -> KoszulComplex:
    """The Koszul complex on the variables (a minimal generating set of m)."""
    return koszul_complex(qr, [qr.poly_ring.variable(i) for i in range(len(qr.names))])


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    subject: str
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        if self.ok:
            return f"{self.subject}: all checks pass"
        return f"{self.subject}: " + "; ".join(self.failures[:8])


def validate_algebra(A: FiniteDGAlgebra) -> ValidationReport:
    """Check ∂² = 0, Leibniz, associativity, commutativity, unit and grading laws."""
    fld = A.field
    failures = []
    zero = fld.zero
    D = A.diff.a

    def vec_eq(u, v):
        return not np.any(fld.normalize(u - v) != zero)

    # grading of multiplication and differential
    for i in range(A.dim):
        for j in range(A.dim):
            for k in np.flatnonzero(A.mult[i, j] != zero):
                if A.degrees[int(k)] != A.degrees[i] + A.degrees[j]:
                    failures.append(
                        f"product {A.labels[i]}*{A.labels[j]} hits {A.labels[int(k)]} in wrong degree"
                    )
    for j in range(A.dim):
        for i in np.flatnonzero(D[:, j] != zero):
            if A.degrees[int(i)] != A.degrees[j] - 1:
                failures.append(f"differential of {A.labels[j]} is not homogeneous of degree -1")

    # d^2 = 0
    D2 = fld.dot(D, D)
    if np.any(D2 != zero):
        j = int(np.argwhere(D2 != zero)[0][1])
        failures.append(f"d^2 is nonzero on {A.labels[j]}")

    # unit laws
    u = A.unit_vector()
    for j in range(A.dim):
        bj = _basis_vec(fld, A.dim, j)
        if not vec_eq(A.multiply(u, bj), bj) or not vec_eq(A.multiply(bj, u), bj):
            failures.append(f"unit law fails on {A.labels[j]}")
    if np.any(D[:, A.unit_index] != zero):
        failures.append("differential of the unit is nonzero")

    # Leibniz: d(ab) = d(a)b + (-1)^{|a|} a d(b)
    for i in range(A.dim):
        for j in range(A.dim):
            ab = A.mult[i, j]
            lhs = fld.dot(D, ab)
            da_b = A.multiply(D[:, i], _basis_vec(fld, A.dim, j))
            a_db = A.multiply(_basis_vec(fld, A.dim, i), D[:, j])
            if A.degrees[i] % 2:
                a_db = fld.normalize(-a_db)
            if not vec_eq(lhs, fld.normalize(da_b + a_db)):
                failures.append(f"Leibniz fails on ({A.labels[i]}, {A.labels[j]})")

    # graded commutativity: ab = (-1)^{|a||b|} ba
    for i in range(A.dim):
        for j in range(i + 1):
            ba = A.mult[j, i].copy()
            if (A.degrees[i] * A.degrees[j]) % 2:
                ba = fld.normalize(-ba)
            if not vec_eq(A.mult[i, j], ba):
                failures.append(f"graded commutativity fails on ({A.labels[i]}, {A.labels[j]})")

    # associativity on basis triples
    ok_assoc = True
    for i in range(A.dim):
        if not ok_assoc:
            break
        for j in range(A.dim):
            if not ok_assoc:
                break
            ij = A.mult[i, j]
            for k in range(A.dim):
                left = A.multiply(ij, _basis_vec(fld, A.dim, k))
                right = A.multiply(_basis_vec(fld, A.dim, i), A.mult[j, k])
                if not vec_eq(left, right):
                    failures.append(
                        f"associativity fails on ({A.labels[i]}, {A.labels[j]}, {A.labels[k]})"
                    )
                    ok_assoc = False
                    break

    if A.hopf is not None:
        failures.extend(_validate_hopf(A))

    return ValidationReport(subject=repr(A), failures=failures)


def _validate_hopf(A: FiniteDGAlgebra) -> list:
    fld = A.field
    zero = fld.zero
    failures = []
    delta = A.hopf.delta
    sigma = A.hopf.antipode

    # counit laws: (aug⊗1)Δ = id = (1⊗aug)Δ
    for a in range(A.dim):
        left = delta[a][A.unit_index, :]
        right = delta[a][:, A.unit_index]
        e = _basis_vec(fld, A.dim, a)
        if np.any(fld.normalize(left - e) != zero) or np.any(fld.normalize(right - e) != zero):
            failures.append(f"counit law fails on {A.labels[a]}")

    # primitives on generators
    for g in A.generators:
        expected = fld.zeros((A.dim, A.dim))
        expected[g, A.unit_index] = fld.one
        expected[A.unit_index, g] = fld.one
        if np.any(fld.normalize(delta[g] - expected) != zero):
            failures.append(f"comultiplication of generator {A.labels[g]} is not primitive")

    # Δ multiplicative: Δ(ab) = Δ(a)Δ(b) in A⊗A
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = fld.zeros((A.dim, A.dim))
            for k in np.flatnonzero(A.mult[i, j] != zero):
                lhs = fld.normalize(lhs + A.mult[i, j][int(k)] * delta[int(k)])
            rhs = tensor_square_product(A, delta[i], delta[j])
            if np.any(fld.normalize(lhs - rhs) != zero):
                failures.append(f"Δ is not multiplicative on ({A.labels[i]}, {A.labels[j]})")

    # coassociativity: (Δ⊗1)Δ = (1⊗Δ)Δ
    for a in range(A.dim):
        lhs = fld.zeros((A.dim, A.dim, A.dim))
        rhs = fld.zeros((A.dim, A.dim, A.dim))
        for p, q in np.argwhere(delta[a] != zero):
            lhs = fld.normalize(lhs + delta[a][p, q] * delta[int(p)][:, :, None] * _one_hot(fld, A.dim, int(q))[None, None, :])
            rhs = fld.normalize(rhs + delta[a][p, q] * _one_hot(fld, A.dim, int(p))[:, None, None] * delta[int(q)][None, :, :])
        if np.any(fld.normalize(lhs - rhs) != zero):
            failures.append(f"coassociativity fails on {A.labels[a]}")

    # antipode: algebra automorphism with σ² = id and Σ σ(a₁)a₂ = aug(a)·1
    s2 = fld.dot(sigma.a, sigma.a)
    if np.any(fld.normalize(s2 - fld.eye(A.dim)) != zero):
        failures.append("antipode is not an involution")
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = fld.dot(sigma.a, A.mult[i, j])
            rhs = A.multiply(sigma.a[:, i], sigma.a[:, j])
            if np.any(fld.normalize(lhs - rhs) != zero):
                failures.append(f"antipode is not multiplicative on ({A.labels[i]}, {A.labels[j]})")
    for a in range(A.dim):
        acc1 = fld.zeros((A.dim,))
        acc2 = fld.zeros((A.dim,))
        for p, q in np.argwhere(delta[a] != zero):
            c = delta[a][p, q]
            acc1 = fld.normalize(acc1 + c * A.multiply(sigma.a[:, int(p)], _one_hot(fld, A.dim, int(q))))
            acc2 = fld.normalize(acc2 + c * A.multiply(_one_hot(fld, A.dim, int(p)), sigma.a[:, int(q)]))
        expected = fld.zeros((A.dim,))
        if a == A.unit_index:
            expected[A.unit_index] = fld.one
        if np.any(fld.normalize(acc1 - expected) != zero) or np.any(fld.normalize(acc2 - expected) != zero):
            failures.append(f"antipode axiom fails on {A.labels[a]}")

    return failures


def _one_hot(field, n, i):
    v = field.zeros((n,))
    v[i] = field.one
    return v
