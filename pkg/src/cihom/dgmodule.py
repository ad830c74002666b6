"""Finite-dimensional DG modules over the algebras of :mod:`cihom.dgalgebra`.

A module is a graded basis with homological degrees, a differential
matrix (degree -1, columns are images of basis vectors), and one action
matrix per algebra basis element.  All constructions are matrix-level
and exact.

Sign conventions (homological grading, suspension Σ shifts degrees up):

* suspension:       ∂ ↦ -∂,  a·(Σx) = (-1)^{|a|} Σ(ax)
* k-linear dual along an algebra endomorphism ρ:
                    ∂(f) = -(-1)^{|f|} f∂,  (a·f)(x) = (-1)^{|a||f|} f(ρ(a)x)
* twist:            ∂ ↦ -∂,  a·m ↦ (-1)^{|a|} am
* Hom(M,N):         ∂(f) = ∂f - (-1)^{|f|} f∂,
                    (a1⊗a2)·f = (-1)^{|a2||f|} a1 f(σ(a2)·-)
* tensor and Hom become modules through the comultiplication Δ;
* the comparison map N ⊗ M*(σ) → Hom(M,N) sends n⊗f to
  m ↦ (-1)^{|f||m|} n f(m); it is the sign making the map algebra-linear
  for the conventions above, and it is verified at construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .dgalgebra import (
    DGError,
    FiniteDGAlgebra,
    KoszulComplex,
    QuotientRing,
    ValidationReport,
    validate_algebra,
)
from .linalg import EchelonBasis, Matrix
from .poly import Poly, parse_polynomial


@dataclass
class FiniteDGModule:
    algebra: FiniteDGAlgebra
    degrees: tuple
    diff: Matrix
    actions: list
    labels: tuple = ()
    name: str = "M"

    def __post_init__(self):
        if not self.labels:
            self.labels = tuple(f"m{i}" for i in range(len(self.degrees)))
        self._by_degree = None

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def field(self):
        return self.algebra.field

    def basis_by_degree(self) -> dict:
        if self._by_degree is None:
            out: dict = {}
            for i, d in enumerate(self.degrees):
                out.setdefault(d, []).append(i)
            self._by_degree = out
        return self._by_degree

    def degree_range(self):
        if not self.degrees:
            return (0, -1)
        return (min(self.degrees), max(self.degrees))

    def act_vector(self, avec: np.ndarray) -> Matrix:
        """Action matrix of an algebra element given by its coefficient vector."""
        fld = self.field
        out = fld.zeros((self.dim, self.dim))
        for i in np.flatnonzero(avec != fld.zero):
            out = fld.normalize(out + avec[int(i)] * self.actions[int(i)].a)
        return Matrix(fld, out, normalized=True)

    def __repr__(self):
        return f"<DGModule {self.name}: dim {self.dim} over {self.algebra.name}>"


# ---------------------------------------------------------------------------
# chain maps


@dataclass
class ChainMap:
    source: FiniteDGModule
    target: FiniteDGModule
    degree: int
    matrix: Matrix

    def validate(self) -> ValidationReport:
        """Degree homogeneity, chain condition, and algebra-linearity."""
        fld = self.source.field
        failures = []
        F = self.matrix
        zero = fld.zero
        for k in range(self.target.dim):
            for l in range(self.source.dim):
                if F.a[k, l] != zero and self.target.degrees[k] != self.source.degrees[l] + self.degree:
                    failures.append(
                        f"entry ({self.target.labels[k]}, {self.source.labels[l]}) breaks degree"
                    )
        sign = -1 if self.degree % 2 else 1
        chain = (self.target.diff @ F) - (F @ self.source.diff).scale(sign)
        if not chain.is_zero():
            failures.append("does not commute with differentials")
        A = self.source.algebra
        for a in range(A.dim):
            s = -1 if (self.degree * A.degrees[a]) % 2 else 1
            lin = (F @ self.source.actions[a]) - (self.target.actions[a] @ F).scale(s)
            if not lin.is_zero():
                failures.append(f"not linear over {A.labels[a]}")
        return ValidationReport(subject="chain map", failures=failures)

    def is_isomorphism(self) -> bool:
        return (
            self.source.dim == self.target.dim
            and self.matrix.rank() == self.source.dim
        )

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self ∘ other."""
        return ChainMap(
            source=other.source,
            target=self.target,
            degree=self.degree + other.degree,
            matrix=self.matrix @ other.matrix,
        )


# ---------------------------------------------------------------------------
# constructors


def zero_module(A: FiniteDGAlgebra) -> FiniteDGModule:
    return FiniteDGModule(A, (), Matrix.zeros(A.field, 0, 0), [Matrix.zeros(A.field, 0, 0) for _ in range(A.dim)], name="0")


def module_from_algebra(A: FiniteDGAlgebra) -> FiniteDGModule:
    """A as a left module over itself."""
    return FiniteDGModule(
        algebra=A,
        degrees=A.degrees,
        diff=A.diff.copy(),
        actions=[A.left_mult(i) for i in range(A.dim)],
        labels=A.labels,
        name=A.name,
    )


def simple_module(A: FiniteDGAlgebra) -> FiniteDGModule:
    """The residue field k, acted on through the augmentation."""
    fld = A.field
    actions = []
    for i in range(A.dim):
        c = fld.one if i == A.unit_index else fld.zero
        actions.append(Matrix(fld, fld.array([[c]])))
    return FiniteDGModule(A, (0,), Matrix.zeros(fld, 1, 1), actions, labels=("1",), name="k")


def suspension(M: FiniteDGModule, j: int = 1) -> FiniteDGModule:
    if j == 0:
        return M
    fld = M.field
    A = M.algebra
    diff = M.diff if j % 2 == 0 else -M.diff
    actions = []
    for a in range(A.dim):
        s = -1 if (j * A.degrees[a]) % 2 else 1
        actions.append(M.actions[a] if s > 0 else -M.actions[a])
    return FiniteDGModule(
        A,
        tuple(d + j for d in M.degrees),
        diff.copy(),
        actions,
        labels=tuple(f"s{j}({l})" for l in M.labels),
        name=f"S^{j}{M.name}",
    )


def negate_differential(M: FiniteDGModule) -> FiniteDGModule:
    return FiniteDGModule(M.algebra, M.degrees, -M.diff, [m.copy() for m in M.actions], M.labels, name=f"{M.name}'")


def twist(M: FiniteDGModule):
    """The twisted module (∂ ↦ -∂, a·m ↦ (-1)^{|a|}am) and its isomorphism witness.

    The witness sends m to (-1)^{|m|} m; only algebras with zero
    differential admit the twist.
    """
    if not M.algebra.diff.is_zero():
        raise DGError("twist requires an algebra with zero differential")
    fld = M.field
    A = M.algebra
    actions = []
    for a in range(A.dim):
        actions.append(M.actions[a] if A.degrees[a] % 2 == 0 else -M.actions[a])
    Mt = FiniteDGModule(A, M.degrees, -M.diff, actions, M.labels, name=f"{M.name}_tw")
    w = fld.zeros((M.dim, M.dim))
    for i, d in enumerate(M.degrees):
        w[i, i] = fld.one if d % 2 == 0 else fld.neg(fld.one)
    witness = ChainMap(source=M, target=Mt, degree=0, matrix=Matrix(fld, w))
    return Mt, witness


def dual(M: FiniteDGModule, rho: str = "sigma") -> FiniteDGModule:
    """k-linear dual with left action through the endomorphism ρ ∈ {id, sigma}.

    Basis functional i has degree -|m_i|; the matrices are
    ∂*[i,j] = -(-1)^{|m_j|} ∂[j,i] and
    act*[a][i,j] = (-1)^{|a||m_j|} act[ρ(a)][j,i].
    """
    fld = M.field
    A = M.algebra
    if rho not in ("id", "sigma"):
        raise DGError(f"unknown dualizing endomorphism {rho!r}")
    if rho == "sigma" and A.hopf is None:
        raise DGError("antipode dual needs Hopf data on the algebra")
    n = M.dim
    ddual = fld.zeros((n, n))
    for i in range(n):
        for j in range(n):
            c = M.diff.a[j, i]
            if c != fld.zero:
                if M.degrees[j] % 2 == 0:
                    c = fld.neg(c)
                ddual[i, j] = c
    actions = []
    for a in range(A.dim):
        base = M.actions[a].a
        if rho == "sigma" and A.degrees[a] % 2:
            base = fld.normalize(-base)
        out = fld.zeros((n, n))
        for i in range(n):
            for j in range(n):
                c = base[j, i]
                if c != fld.zero:
                    if (A.degrees[a] * M.degrees[j]) % 2:
                        c = fld.neg(c)
                    out[i, j] = c
        actions.append(Matrix(fld, out, normalized=True))
    return FiniteDGModule(
        A,
        tuple(-d for d in M.degrees),
        Matrix(fld, ddual, normalized=True),
        actions,
        labels=tuple(f"{l}*" for l in M.labels),
        name=f"{M.name}*({rho})",
    )


def biduality_map(M: FiniteDGModule, rho: str = "sigma") -> ChainMap:
    """The natural isomorphism M → (M*(ρ))*(ρ), m ↦ ((-1)^{|m||f|} f(m))."""
    dd = dual(dual(M, rho), rho)
    fld = M.field
    w = fld.zeros((M.dim, M.dim))
    for i, d in enumerate(M.degrees):
        w[i, i] = fld.one if d % 2 == 0 else fld.neg(fld.one)
    return ChainMap(source=M, target=dd, degree=0, matrix=Matrix(fld, w))


def direct_sum(M: FiniteDGModule, N: FiniteDGModule) -> FiniteDGModule:
    fld = M.field
    A = M.algebra
    if N.algebra is not A and N.algebra != A:
        raise DGError("direct sum needs modules over the same algebra")
    from .linalg import block_diag

    diff = block_diag([M.diff, N.diff])
    actions = [block_diag([M.actions[a], N.actions[a]]) for a in range(A.dim)]
    return FiniteDGModule(
        A,
        M.degrees + N.degrees,
        diff,
        actions,
        labels=M.labels + N.labels,
        name=f"{M.name}(+){N.name}",
    )


def tensor_module(M: FiniteDGModule, N: FiniteDGModule) -> FiniteDGModule:
    """M ⊗_k N as a module through the comultiplication.

    Basis (i,j) is flattened as i·dim(N)+j; the algebra acts by
    (a1⊗a2)·(m⊗n) = (-1)^{|a2||m|} a1m ⊗ a2n summed over Δ(a).
    """
    A = M.algebra
    if A.hopf is None:
        raise DGError("diagonal tensor needs Hopf data")
    fld = M.field
    dm, dn = M.dim, N.dim
    degrees = tuple(M.degrees[i] + N.degrees[j] for i in range(dm) for j in range(dn))
    sm = _sign_diag(fld, M.degrees)
    diff = M.diff.kron(Matrix.identity(fld, dn)) + sm.kron(N.diff)
    delta = A.hopf.delta
    zero = fld.zero
    actions = []
    for a in range(A.dim):
        acc = fld.zeros((dm * dn, dm * dn))
        for p, q in np.argwhere(delta[a] != zero):
            p, q = int(p), int(q)
            c = delta[a][p, q]
            left = M.actions[p].a
            if A.degrees[q] % 2:
                left = fld.normalize(left * np.array([_pm(fld, d) for d in M.degrees])[None, :])
            acc = fld.normalize(acc + c * np.kron(left, N.actions[q].a))
        actions.append(Matrix(fld, acc, normalized=True))
    labels = tuple(f"{a}(x){b}" for a in M.labels for b in N.labels)
    return FiniteDGModule(A, degrees, diff, actions, labels, name=f"{M.name}(x){N.name}")


def hom_module(M: FiniteDGModule, N: FiniteDGModule) -> FiniteDGModule:
    """Hom_k(M, N) as a module through Δ and the antipode.

    Basis E_{ij} (sending m_j to n_i) is flattened as i·dim(M)+j and has
    degree |n_i| - |m_j|.
    """
    A = M.algebra
    if A.hopf is None:
        raise DGError("diagonal Hom needs Hopf data")
    fld = M.field
    dm, dn = M.dim, N.dim
    degrees = tuple(N.degrees[i] - M.degrees[j] for i in range(dn) for j in range(dm))
    # ∂(f) = ∂N f - (-1)^{|f|} f ∂M
    term1 = N.diff.kron(Matrix.identity(fld, dm))
    term2 = Matrix.identity(fld, dn).kron(M.diff.transpose())
    colsign = fld.zeros((dn * dm, dn * dm))
    for idx, d in enumerate(degrees):
        colsign[idx, idx] = _pm(fld, d + 1)
    diff = term1 + (term2 @ Matrix(fld, colsign, normalized=True))
    delta = A.hopf.delta
    zero = fld.zero
    actions = []
    for a in range(A.dim):
        acc = fld.zeros((dn * dm, dn * dm))
        for p, q in np.argwhere(delta[a] != zero):
            p, q = int(p), int(q)
            c = delta[a][p, q]
            an = N.actions[p].a
            am = M.actions[q].a
            if A.degrees[q] % 2:
                am = fld.normalize(-am)  # precompose with σ(a2)
            block = np.kron(an, am.T)
            if A.degrees[q] % 2:
                sgn = np.array([_pm(fld, d) for d in degrees])
                block = fld.normalize(block * sgn[None, :])
            acc = fld.normalize(acc + c * block)
        actions.append(Matrix(fld, acc, normalized=True))
    labels = tuple(f"[{b}->{a}]" for a in N.labels for b in M.labels)
    return FiniteDGModule(A, degrees, diff, actions, labels, name=f"Hom({M.name},{N.name})")


def _pm(fld, d: int):
    return fld.one if d % 2 == 0 else fld.neg(fld.one)


def _sign_diag(fld, degrees) -> Matrix:
    n = len(degrees)
    out = fld.zeros((n, n))
    for i, d in enumerate(degrees):
        out[i, i] = _pm(fld, d)
    return Matrix(fld, out, normalized=True)


def tensor_to_hom(M: FiniteDGModule, N: FiniteDGModule, check: bool = True):
    """The comparison map N ⊗ M*(σ) → Hom_k(M,N), n⊗f ↦ (m ↦ (-1)^{|f||m|} n f(m)).

    Returns (chain map, source module, target module); bijective since M
    is finite-dimensional.  The internal sign is the one making the map
    algebra-linear; it is validated unless check=False.
    """
    fld = M.field
    Ms = dual(M, "sigma")
    src = tensor_module(N, Ms)
    tgt = hom_module(M, N)
    dm, dn = M.dim, N.dim
    # basis n_i ⊗ m_j^* maps to (-1)^{|m_j|} E_{ij}; both flatten to i·dm+j
    mat = fld.zeros((dn * dm, dn * dm))
    for i in range(dn):
        for j in range(dm):
            mat[i * dm + j, i * dm + j] = _pm(fld, M.degrees[j])
    phi = ChainMap(source=src, target=tgt, degree=0, matrix=Matrix(fld, mat, normalized=True))
    if check:
        rep = phi.validate()
        if not rep.ok:
            raise DGError(f"comparison map failed validation: {rep}")
    return phi, src, tgt


def evaluation_map(M: FiniteDGModule, N: FiniteDGModule, hom: FiniteDGModule | None = None) -> ChainMap:
    """Evaluation Hom_k(M,N) ⊗ M → N, f⊗m ↦ f(m) (no sign)."""
    fld = M.field
    if hom is None:
        hom = hom_module(M, N)
    src = tensor_module(hom, M)
    dm, dn = M.dim, N.dim
    mat = fld.zeros((dn, hom.dim * dm))
    for i in range(dn):
        for j in range(dm):
            mat[i, (i * dm + j) * dm + j] = fld.one
    return ChainMap(source=src, target=N, degree=0, matrix=Matrix(fld, mat, normalized=True))


def splitting_maps(M: FiniteDGModule):
    """Chain maps ι: M → M⊗M*(σ)⊗M and π back with π∘ι = id on the nose.

    ι sends m to Σ_i (-1)^{|m_i|} m_i ⊗ m_i^* ⊗ m (the preimage of the
    identity under the comparison map, tensored with m); π evaluates the
    middle factor on the right one through the comparison map, i.e.
    m'⊗f⊗m ↦ (-1)^{|f||m|} m' f(m).
    """
    fld = M.field
    Ms = dual(M, "sigma")
    MMs = tensor_module(M, Ms)
    T = tensor_module(MMs, M)
    n = M.dim
    iota = fld.zeros((T.dim, n))
    for l in range(n):
        for i in range(n):
            iota[(i * n + i) * n + l, l] = _pm(fld, M.degrees[i])
    pi = fld.zeros((n, T.dim))
    for i in range(n):
        for j in range(n):
            pi[i, (i * n + j) * n + j] = _pm(fld, M.degrees[j])
    return (
        ChainMap(source=M, target=T, degree=0, matrix=Matrix(fld, iota, normalized=True)),
        ChainMap(source=T, target=M, degree=0, matrix=Matrix(fld, pi, normalized=True)),
    )


def cone(f: ChainMap) -> FiniteDGModule:
    """Mapping cone of a degree-0 chain map; underlying space N ⊕ ΣM."""
    if f.degree != 0:
        raise DGError("cone expects a degree-0 chain map")
    M, N = f.source, f.target
    fld = M.field
    A = M.algebra
    dim = N.dim + M.dim
    diff = fld.zeros((dim, dim))
    diff[: N.dim, : N.dim] = N.diff.a
    diff[: N.dim, N.dim:] = f.matrix.a
    diff[N.dim:, N.dim:] = fld.normalize(-M.diff.a)
    actions = []
    for a in range(A.dim):
        act = fld.zeros((dim, dim))
        act[: N.dim, : N.dim] = N.actions[a].a
        block = M.actions[a].a
        if A.degrees[a] % 2:
            block = fld.normalize(-block)
        act[N.dim:, N.dim:] = block
        actions.append(Matrix(fld, act, normalized=True))
    degrees = N.degrees + tuple(d + 1 for d in M.degrees)
    labels = N.labels + tuple(f"s({l})" for l in M.labels)
    return FiniteDGModule(A, degrees, Matrix(fld, diff, normalized=True), actions, labels, name=f"cone({M.name}->{N.name})")


# ---------------------------------------------------------------------------
# spaces of chain maps


def chain_map_space(M: FiniteDGModule, N: FiniteDGModule, degree: int = 0) -> list:
    """Basis of the space of algebra-linear chain maps M → N of the given degree."""
    fld = M.field
    A = M.algebra
    slots = [
        (k, l)
        for k in range(N.dim)
        for l in range(M.dim)
        if N.degrees[k] == M.degrees[l] + degree
    ]
    if not slots:
        return []
    slot_index = {s: i for i, s in enumerate(slots)}
    rows = []

    def add_constraints(P: Matrix, Q: Matrix, sign: int):
        # constraint P@F - sign·F@Q = 0 entrywise in the slot variables
        for k in range(N.dim):
            for l in range(M.dim):
                row = fld.zeros((len(slots),))
                for (kk, ll), idx in slot_index.items():
                    c = fld.zero
                    if ll == l:
                        c = fld.add(c, P.a[k, kk])
                    if kk == k:
                        term = Q.a[ll, l]
                        if sign < 0:
                            term = fld.neg(term)
                        c = fld.sub(c, term)
                    if c != fld.zero:
                        row[idx] = c
                if np.any(row != fld.zero):
                    rows.append(row)

    sgn = -1 if degree % 2 else 1
    add_constraints(N.diff, M.diff, sgn)
    for a in range(A.dim):
        s = -1 if (degree * A.degrees[a]) % 2 else 1
        add_constraints(N.actions[a], M.actions[a], s)

    if rows:
        sys_mat = Matrix(fld, np.stack(rows), normalized=True)
        ker = sys_mat.kernel_basis()
    else:
        ker = Matrix.identity(fld, len(slots))
    out = []
    for c in range(ker.cols):
        F = fld.zeros((N.dim, M.dim))
        for (k, l), idx in slot_index.items():
            F[k, l] = ker.a[idx, c]
        out.append(ChainMap(source=M, target=N, degree=degree, matrix=Matrix(fld, F, normalized=True)))
    return out


def find_dg_isomorphism(M: FiniteDGModule, N: FiniteDGModule, seed: int = 1, attempts: int = 40):
    """A degree-0 chain isomorphism M ≅ N, or None if none is found."""
    if sorted(M.degrees) != sorted(N.degrees):
        return None
    space = chain_map_space(M, N, 0)
    if not space:
        return None
    for f in space:
        if f.is_isomorphism():
            return f
    import random

    rng = random.Random(seed)
    fld = M.field
    for _ in range(attempts):
        acc = fld.zeros((N.dim, M.dim))
        for f in space:
            acc = fld.normalize(acc + fld.coerce(fld.random_scalar(rng)) * f.matrix.a)
        cand = ChainMap(source=M, target=N, degree=0, matrix=Matrix(fld, acc, normalized=True))
        if cand.is_isomorphism():
            return cand
    return None


# ---------------------------------------------------------------------------
# modules over quotient rings


def module_from_presentation(qr: QuotientRing, rows) -> FiniteDGModule:
    """Cokernel of the map given by a matrix of ring elements (row-major).

    The matrix presents coker(R^a → R^b); entries may be strings or
    polynomials.  The result is concentrated in homological degree 0.
    """
    parsed = [
        [parse_polynomial(qr.poly_ring, e) if isinstance(e, str) else e for e in row]
        for row in rows
    ]
    b = len(parsed)
    a = len(parsed[0]) if b and parsed[0] else 0
    for row in parsed:
        if len(row) != a:
            raise DGError("ragged presentation matrix")
    fld = qr.field
    rdim = qr.dim
    ambient = b * rdim
    cols = []
    for j in range(a):
        colvecs = [qr.poly_to_vector(parsed[i][j]) for i in range(b)]
        for r in range(rdim):
            v = fld.zeros((ambient,))
            for i in range(b):
                prod = qr.algebra.multiply(_unit_at(fld, rdim, r), colvecs[i])
                v[i * rdim:(i + 1) * rdim] = fld.normalize(v[i * rdim:(i + 1) * rdim] + prod)
            cols.append(v)
    image = Matrix.from_columns(fld, cols, ambient)
    return _quotient_of_free(qr, b, image, name="coker")


def submodule_module(qr: QuotientRing, generators, rank: int) -> FiniteDGModule:
    """The submodule of R^rank spanned by the given columns of ring elements."""
    gens = [
        [parse_polynomial(qr.poly_ring, e) if isinstance(e, str) else e for e in col]
        for col in generators
    ]
    fld = qr.field
    rdim = qr.dim
    ambient = rank * rdim
    ech = EchelonBasis(fld, ambient)
    basis_cols = []
    for col in gens:
        if len(col) != rank:
            raise DGError("generator length does not match rank")
        base = [qr.poly_to_vector(p) for p in col]
        for r in range(rdim):
            v = fld.zeros((ambient,))
            for i in range(rank):
                prod = qr.algebra.multiply(_unit_at(fld, rdim, r), base[i])
                v[i * rdim:(i + 1) * rdim] = fld.normalize(v[i * rdim:(i + 1) * rdim] + prod)
            if ech.insert(v):
                basis_cols.append(v)
    S = Matrix.from_columns(fld, basis_cols, ambient)
    actions = []
    for ai in range(qr.dim):
        big = _free_action(qr, rank, ai)
        img = big @ S
        X = S.solve_matrix(img) if S.cols else Matrix.zeros(fld, 0, 0)
        if X is None:
            raise DGError("submodule is not closed under the ring action")
        actions.append(X)
    return FiniteDGModule(
        qr.algebra,
        tuple(0 for _ in range(S.cols)),
        Matrix.zeros(fld, S.cols, S.cols),
        actions,
        name="submodule",
    )


def _unit_at(fld, n, i):
    v = fld.zeros((n,))
    v[i] = fld.one
    return v


def _free_action(qr: QuotientRing, rank: int, ai: int) -> Matrix:
    from .linalg import block_diag

    return block_diag([qr.algebra.left_mult(ai) for _ in range(rank)])


def _quotient_of_free(qr: QuotientRing, rank: int, image: Matrix, name: str) -> FiniteDGModule:
    from .linalg import QuotientSpace

    fld = qr.field
    ambient = rank * qr.dim
    full = Matrix.identity(fld, ambient)
    q = QuotientSpace(fld, ambient, image, full)
    actions = []
    for ai in range(qr.dim):
        big = _free_action(qr, rank, ai)
        cols = []
        for c in range(q.dim):
            vec = fld.dot(big.a, q.reps.column(c))
            coords = q.project(vec)
            cols.append(coords)
        actions.append(Matrix.from_columns(fld, cols, q.dim))
    mod = FiniteDGModule(
        qr.algebra,
        tuple(0 for _ in range(q.dim)),
        Matrix.zeros(fld, q.dim, q.dim),
        actions,
        name=name,
    )
    mod.coker_space = q
    return mod


# ---------------------------------------------------------------------------
# Koszul tensor functor


def tensor_koszul(K: KoszulComplex, M: FiniteDGModule) -> FiniteDGModule:
    """M ⊗_R K as a DG module over the Koszul algebra.

    M must be a DG module over the underlying ring's degree-0 algebra.
    The result has basis (subset, basis of M), dimension 2^s · dim M.
    """
    qr = K.ring
    if M.algebra is not qr.algebra and M.algebra != qr.algebra:
        raise DGError("tensor_koszul expects a module over the Koszul complex's ring")
    fld = qr.field
    s = len(K.elements)
    masks = sorted(range(1 << s), key=lambda m: (bin(m).count("1"), m))
    mask_pos = {m: i for i, m in enumerate(masks)}
    dm = M.dim
    dim = len(masks) * dm

    def flat(mask, i):
        return mask_pos[mask] * dm + i

    degrees = tuple(
        bin(mask).count("1") + M.degrees[i] for mask in masks for i in range(dm)
    )

    elem_actions = [M.act_vector(e) for e in K.elements]

    diff = fld.zeros((dim, dim))
    for mask in masks:
        bits = [a for a in range(s) if mask >> a & 1]
        deg_e = len(bits)
        for i in range(dm):
            col = flat(mask, i)
            # contraction part: Σ_t (-1)^t e_{S∖j_t} ⊗ (x_{j_t}·m)
            for pos, a in enumerate(bits):
                rest = mask & ~(1 << a)
                target = elem_actions[a].column(i)
                sgn = 1 if pos % 2 == 0 else -1
                for k in np.flatnonzero(target != fld.zero):
                    c = target[int(k)] if sgn > 0 else fld.neg(target[int(k)])
                    r = flat(rest, int(k))
                    diff[r, col] = fld.add(diff[r, col], c)
            # internal part: (-1)^{|S|} e_S ⊗ ∂m
            dcol = M.diff.column(i)
            for k in np.flatnonzero(dcol != fld.zero):
                c = dcol[int(k)] if deg_e % 2 == 0 else fld.neg(dcol[int(k)])
                r = flat(mask, int(k))
                diff[r, col] = fld.add(diff[r, col], c)

    def ext_sign(mi, mj):
        inv = 0
        for a in range(s):
            if mi >> a & 1:
                inv += bin(mj & ((1 << a) - 1)).count("1")
        return 1 if inv % 2 == 0 else -1

    actions = []
    for (ri, maskT) in K.pairs:
        act = fld.zeros((dim, dim))
        ring_act = M.actions[ri].a
        for maskS in masks:
            if maskT & maskS:
                continue
            sgn = ext_sign(maskT, maskS)
            union = maskT | maskS
            block = ring_act if sgn > 0 else fld.normalize(-ring_act)
            r0 = mask_pos[union] * dm
            c0 = mask_pos[maskS] * dm
            act[r0:r0 + dm, c0:c0 + dm] = fld.normalize(act[r0:r0 + dm, c0:c0 + dm] + block)
        actions.append(Matrix(fld, act, normalized=True))

    def label(mask, i):
        if mask == 0:
            return M.labels[i]
        el = "e" + "".join(str(a + 1) for a in range(s) if mask >> a & 1)
        return f"{el}(x){M.labels[i]}"

    labels = tuple(label(mask, i) for mask in masks for i in range(dm))
    return FiniteDGModule(
        K.algebra,
        degrees,
        Matrix(fld, diff, normalized=True),
        actions,
        labels,
        name=f"t({M.name})",
    )


def restrict_koszul_module(K: KoszulComplex, X: FiniteDGModule) -> FiniteDGModule:
    """Restrict a module over the Koszul algebra to the underlying ring."""
    qr = K.ring
    actions = [X.actions[K.pair_index(ri, 0)] for ri in range(qr.dim)]
    return FiniteDGModule(
        qr.algebra,
        X.degrees,
        X.diff.copy(),
        actions,
        X.labels,
        name=f"{X.name}|R",
    )


# ---------------------------------------------------------------------------
# validation


def validate_module(M: FiniteDGModule) -> ValidationReport:
    """Check grading, ∂² = 0, unitality, associativity, and module Leibniz."""
    fld = M.field
    A = M.algebra
    failures = []
    zero = fld.zero
    D = M.diff.a

    for j in range(M.dim):
        for i in np.flatnonzero(D[:, j] != zero):
            if M.degrees[int(i)] != M.degrees[j] - 1:
                failures.append(f"differential of {M.labels[j]} not of degree -1")
    for a in range(A.dim):
        act = M.actions[a].a
        for j in range(M.dim):
            for i in np.flatnonzero(act[:, j] != zero):
                if M.degrees[int(i)] != M.degrees[j] + A.degrees[a]:
                    failures.append(
                        f"action of {A.labels[a]} on {M.labels[j]} breaks the grading"
                    )

    D2 = fld.dot(D, D)
    if np.any(D2 != zero):
        j = int(np.argwhere(D2 != zero)[0][1])
        failures.append(f"d^2 nonzero on {M.labels[j]}")

    unit = M.actions[A.unit_index]
    if unit != Matrix.identity(fld, M.dim):
        failures.append("unit does not act as the identity")

    # associativity: (b_i b_j)·m = b_i·(b_j·m)
    for i in range(A.dim):
        for j in range(A.dim):
            prod = M.act_vector(A.mult[i, j])
            comp = M.actions[i] @ M.actions[j]
            if prod != comp:
                failures.append(f"action not associative on ({A.labels[i]}, {A.labels[j]})")

    # Leibniz: ∂(a m) = ∂(a) m + (-1)^{|a|} a ∂(m)
    for a in range(A.dim):
        lhs = Matrix(fld, D, normalized=True) @ M.actions[a]
        da = M.act_vector(A.diff.column(a))
        term = M.actions[a] @ Matrix(fld, D, normalized=True)
        if A.degrees[a] % 2:
            term = -term
        if lhs != da + term:
            failures.append(f"module Leibniz fails for {A.labels[a]}")

    return ValidationReport(subject=repr(M), failures=failures)


def validate(obj) -> ValidationReport:
    """Diagnostic entry point for algebras, modules, and chain maps."""
    if isinstance(obj, FiniteDGAlgebra):
        return validate_algebra(obj)
    if isinstance(obj, FiniteDGModule):
        return validate_module(obj)
    if isinstance(obj, ChainMap):
        return obj.validate()
    raise DGError(f"cannot validate object of type {type(obj).__name__}")
