"""Multivariate polynomials, Gröbner bases, and syzygy-based ideal arithmetic.

Polynomials live in a :class:`PolyRing` over an exact field, with a
weighted degree on each variable (presentation variables carry degree 1,
the cohomology-operator variables carry degree -2).  Monomials are plain
exponent tuples, polynomials are dicts, and elements of graded free
modules are dicts keyed by (component, monomial).

The monomial order is graded reverse lexicographic; free modules use
position-over-term on top of it (earlier components are larger, which
also serves as the elimination order in the syzygy computation).

Everything here is deterministic: pair selection in Buchberger's
algorithm and the final reduced basis are fixed by the order alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix


class PolyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomials


def grevlex_key(mono):
    return (sum(mono), tuple(-e for e in reversed(mono)))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b as a monomial, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyRing:
    def __init__(self, field, names, degrees=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise PolyError("variable names must be distinct")
        if degrees is None:
            degrees = tuple(1 for _ in names)
        degrees = tuple(int(d) for d in degrees)
        if any(d == 0 for d in degrees):
            raise PolyError("variable degrees must be nonzero")
        self.field = field
        self.names = names
        self.degrees = degrees
        self.nvars = len(names)
        self._mono_cache: dict[int, list] = {}

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.nvars: self.field.one})

    def constant(self, c) -> "Poly":
        c = self.field.coerce(c)
        if c == self.field.zero:
            return self.zero()
        return Poly(self, {(0,) * self.nvars: c})

    def variable(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def variables(self):
        return [self.variable(i) for i in range(self.nvars)]

    def monomial(self, expos, coeff=1) -> "Poly":
        c = self.field.coerce(coeff)
        if c == self.field.zero:
            return self.zero()
        return Poly(self, {tuple(expos): c})

    def mono_degree(self, mono) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def monomials_of_degree(self, w: int):
        """All monomials of weighted degree w; requires single-sign weights."""
        if w in self._mono_cache:
            return self._mono_cache[w]
        degs = self.degrees
        if not (all(d > 0 for d in degs) or all(d < 0 for d in degs)):
            raise PolyError("monomial enumeration needs uniform-sign degrees")
        sign = 1 if degs[0] > 0 else -1
        target = sign * w
        steps = [sign * d for d in degs]
        out = []
        if target >= 0:
            def rec(i, remaining, acc):
                if i == len(steps):
                    if remaining == 0:
                        out.append(tuple(acc))
                    return
                step = steps[i]
                e = 0
                while e * step <= remaining:
                    rec(i + 1, remaining - e * step, acc + [e])
                    e += 1
            rec(0, target, [])
        self._mono_cache[w] = out
        return out

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.names == other.names
            and self.degrees == other.degrees
        )

    def __hash__(self):
        return hash((self.field, self.names, self.degrees))

    def __repr__(self):
        return f"PolyRing({self.field}, {list(self.names)}, degrees={list(self.degrees)})"


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != ring.field.zero}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "Poly") -> "Poly":
        fld = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = fld.add(out.get(m, fld.zero), c)
        return Poly(self.ring, out)

    def __sub__(self, other: "Poly") -> "Poly":
        fld = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = fld.sub(out.get(m, fld.zero), c)
        return Poly(self.ring, out)

    def __neg__(self) -> "Poly":
        fld = self.ring.field
        return Poly(self.ring, {m: fld.neg(c) for m, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        fld = self.ring.field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = fld.add(out.get(m, fld.zero), fld.mul(c1, c2))
        return Poly(self.ring, out)

    def scale(self, c) -> "Poly":
        fld = self.ring.field
        c = fld.coerce(c)
        return Poly(self.ring, {m: fld.mul(cc, c) for m, cc in self.terms.items()})

    def term_mul(self, mono, coeff) -> "Poly":
        fld = self.ring.field
        return Poly(self.ring, {mono_mul(m, mono): fld.mul(c, coeff) for m, c in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def lead(self):
        """(monomial, coefficient) of the grevlex-largest term."""
        if not self.terms:
            raise PolyError("zero polynomial has no lead term")
        m = max(self.terms, key=grevlex_key)
        return m, self.terms[m]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        _, c = self.lead()
        return self.scale(self.ring.field.inv(c))

    def degree_or_none(self):
        """Weighted degree if homogeneous, else None; zero has degree None."""
        degs = {self.ring.mono_degree(m) for m in self.terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({self.ring.mono_degree(m) for m in self.terms}) <= 1

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        fld = self.ring.field
        parts = []
        for m in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[m]
            factors = []
            for name, e in zip(self.ring.names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            cs = fld.scalar_str(c)
            if factors and cs == "1":
                parts.append("*".join(factors))
            elif factors:
                parts.append(cs + "*" + "*".join(factors))
            else:
                parts.append(cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self})"


# ---------------------------------------------------------------------------
# graded free modules


class FreeModule:
    def __init__(self, ring: PolyRing, rank: int, gen_degrees=None):
        self.ring = ring
        self.rank = rank
        if gen_degrees is None:
            gen_degrees = tuple(0 for _ in range(rank))
        self.gen_degrees = tuple(int(d) for d in gen_degrees)
        if len(self.gen_degrees) != rank:
            raise PolyError("generator degree count mismatch")

    def zero(self) -> "Vec":
        return Vec(self, {})

    def gen(self, i: int) -> "Vec":
        return Vec(self, {(i, (0,) * self.ring.nvars): self.ring.field.one})

    def from_polys(self, polys) -> "Vec":
        """Column vector with the given polynomial in each component."""
        polys = list(polys)
        if len(polys) != self.rank:
            raise PolyError("component count mismatch")
        out: dict = {}
        for i, p in enumerate(polys):
            for m, c in p.terms.items():
                out[(i, m)] = c
        return Vec(self, out)

    def basis_in_degree(self, t: int):
        """All (component, monomial) pairs of weighted degree t."""
        out = []
        for i in range(self.rank):
            for m in self.ring.monomials_of_degree(t - self.gen_degrees[i]):
                out.append((i, m))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, FreeModule)
            and self.ring == other.ring
            and self.rank == other.rank
            and self.gen_degrees == other.gen_degrees
        )

    def __repr__(self):
        return f"FreeModule(rank={self.rank}, degrees={list(self.gen_degrees)})"


def _pot_key(term):
    comp, mono = term
    return (-comp, grevlex_key(mono))


class Vec:
    """Element of a graded free module, as {(component, monomial): coeff}."""

    __slots__ = ("module", "terms")

    def __init__(self, module: FreeModule, terms: dict):
        self.module = module
        self.terms = {t: c for t, c in terms.items() if c != module.ring.field.zero}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "Vec") -> "Vec":
        fld = self.module.ring.field
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = fld.add(out.get(t, fld.zero), c)
        return Vec(self.module, out)

    def __sub__(self, other: "Vec") -> "Vec":
        fld = self.module.ring.field
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = fld.sub(out.get(t, fld.zero), c)
        return Vec(self.module, out)

    def __neg__(self) -> "Vec":
        fld = self.module.ring.field
        return Vec(self.module, {t: fld.neg(c) for t, c in self.terms.items()})

    def scale(self, c) -> "Vec":
        fld = self.module.ring.field
        c = fld.coerce(c)
        return Vec(self.module, {t: fld.mul(cc, c) for t, cc in self.terms.items()})

    def term_mul(self, mono, coeff) -> "Vec":
        fld = self.module.ring.field
        return Vec(
            self.module,
            {(i, mono_mul(m, mono)): fld.mul(c, coeff) for (i, m), c in self.terms.items()},
        )

    def poly_mul(self, p: Poly) -> "Vec":
        out = self.module.zero()
        for m, c in p.terms.items():
            out = out + self.term_mul(m, c)
        return out

    def lead(self):
        if not self.terms:
            raise PolyError("zero vector has no lead term")
        t = max(self.terms, key=_pot_key)
        return t, self.terms[t]

    def monic(self) -> "Vec":
        if self.is_zero():
            return self
        _, c = self.lead()
        return self.scale(self.module.ring.field.inv(c))

    def component(self, i: int) -> Poly:
        return Poly(self.module.ring, {m: c for (j, m), c in self.terms.items() if j == i})

    def components(self):
        return [self.component(i) for i in range(self.module.rank)]

    def degree_or_none(self):
        ring = self.module.ring
        degs = {
            self.module.gen_degrees[i] + ring.mono_degree(m) for (i, m) in self.terms
        }
        if len(degs) != 1:
            return None
        return degs.pop()

    def __eq__(self, other):
        return isinstance(other, Vec) and self.module == other.module and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({self.component(i)})*g{i}" for i in range(self.module.rank) if self.component(i)
        )

    def __repr__(self):
        return f"Vec({self})"


# ---------------------------------------------------------------------------
# division and Buchberger


def normal_form_vec(f: Vec, basis) -> Vec:
    """Fully reduced remainder of f modulo the (lead-term indexed) basis."""
    fld = f.module.ring.field
    leads = [(g.lead()[0], g.lead()[1], g) for g in basis if not g.is_zero()]
    rem: dict = {}
    work = dict(f.terms)
    while work:
        t = max(work, key=_pot_key)
        c = work[t]
        if c == fld.zero:
            del work[t]
            continue
        comp, mono = t
        hit = None
        for (lcomp, lmono), lc, g in leads:
            if lcomp != comp:
                continue
            q = mono_div(mono, lmono)
            if q is not None:
                hit = (q, fld.div(c, lc), g)
                break
        if hit is None:
            del work[t]
            rem[t] = fld.add(rem.get(t, fld.zero), c)
            continue
        q, factor, g = hit
        for (gi, gm), gc in g.terms.items():
            tt = (gi, mono_mul(gm, q))
            cur = work.get(tt, fld.zero)
            nv = fld.sub(cur, fld.mul(gc, factor))
            if nv == fld.zero:
                work.pop(tt, None)
            else:
                work[tt] = nv
    return Vec(f.module, rem)


def _spair(f: Vec, g: Vec):
    # callers guarantee the lead terms sit in the same component
    (_, mf), cf = f.lead()
    (_, mg), cg = g.lead()
    L = mono_lcm(mf, mg)
    fld = f.module.ring.field
    a = f.term_mul(mono_div(L, mf), fld.inv(cf))
    b = g.term_mul(mono_div(L, mg), fld.inv(cg))
    return a - b


def groebner(gens) -> list:
    """Reduced Gröbner basis of the submodule generated by the inputs.

    Works uniformly for ideals (rank-1 modules) and submodules of graded
    free modules; pair elimination uses the product criterion (ideals
    only) and the chain criterion.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    module = gens[0].module
    rank1 = module.rank == 1
    G = [g.monic() for g in gens]

    def lcm_of(i, j):
        ci, mi = G[i].lead()[0]
        cj, mj = G[j].lead()[0]
        if ci != cj:
            return None
        return mono_lcm(mi, mj)

    pairs = set()
    processed = set()
    for i in range(len(G)):
        for j in range(i):
            if lcm_of(j, i) is not None:
                pairs.add((j, i))

    def coprime(i, j):
        mi = G[i].lead()[0][1]
        mj = G[j].lead()[0][1]
        return all(min(a, b) == 0 for a, b in zip(mi, mj))

    while pairs:
        best = min(pairs, key=lambda ij: (grevlex_key(lcm_of(*ij)), ij))
        pairs.discard(best)
        processed.add(best)
        i, j = best
        L = lcm_of(i, j)
        if rank1 and coprime(i, j):
            continue
        # chain criterion: some k with lead(k) | lcm(i,j), both side pairs done
        skip = False
        comp = G[i].lead()[0][0]
        for k in range(len(G)):
            if k in (i, j):
                continue
            ck, mk = G[k].lead()[0]
            if ck != comp or mono_div(L, mk) is None:
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            if pik in processed and pjk in processed:
                skip = True
                break
        if skip:
            continue
        h = normal_form_vec(_spair(G[i], G[j]), G)
        if h.is_zero():
            continue
        h = h.monic()
        t = len(G)
        G.append(h)
        hc = h.lead()[0][0]
        for k in range(t):
            if G[k].lead()[0][0] == hc:
                pairs.add((k, t))

    return _reduce_basis(G)


def _reduce_basis(G) -> list:
    # minimalize: drop elements whose lead term is divisible by another lead
    keep = []
    for i, g in enumerate(G):
        ci, mi = g.lead()[0]
        divisible = False
        for j, h in enumerate(G):
            if i == j:
                continue
            cj, mj = h.lead()[0]
            if ci == cj and mono_div(mi, mj) is not None:
                if mi != mj or j < i:
                    divisible = True
                    break
        if not divisible:
            keep.append(g)
    # tail-reduce each against the others
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = normal_form_vec(g, others) if others else g
        if not r.is_zero():
            out.append(r.monic())
    out.sort(key=lambda v: _pot_key(v.lead()[0]), reverse=True)
    return out


# ideal-level wrappers -------------------------------------------------------


@dataclass
class GroebnerBasis:
    """A reduced Gröbner basis with its order tag."""

    gens: list
    order: str

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)


def _as_vecs(polys, ring):
    F = FreeModule(ring, 1)
    return [Vec(F, {(0, m): c for m, c in p.terms.items()}) for p in polys], F


def groebner_ideal(polys, ring=None) -> GroebnerBasis:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return GroebnerBasis([], "grevlex")
    ring = ring or polys[0].ring
    vecs, _ = _as_vecs(polys, ring)
    gb = groebner(vecs)
    return GroebnerBasis([v.component(0) for v in gb], "grevlex")


def normal_form(p: Poly, gb: GroebnerBasis) -> Poly:
    if not gb.gens:
        return p
    ring = p.ring
    vecs, F = _as_vecs(list(gb.gens), ring)
    fv = Vec(F, {(0, m): c for m, c in p.terms.items()})
    return normal_form_vec(fv, vecs).component(0)


def is_unit_ideal(gb: GroebnerBasis) -> bool:
    ring = gb.gens[0].ring if gb.gens else None
    if ring is None:
        return False
    return normal_form(ring.one(), gb).is_zero()


# ---------------------------------------------------------------------------
# syzygies and derived ideal operations


def syzygy_generators(gens) -> list:
    """Generators of the syzygy module of the given free-module elements.

    Computed by a Gröbner basis in F ⊕ S^s with the free part eliminated:
    basis elements supported entirely on the trailing components are the
    syzygies.  Returns elements of S^len(gens) graded by the generator
    degrees (0 where a generator is inhomogeneous).
    """
    gens = list(gens)
    if not gens:
        return []
    F = gens[0].module
    ring = F.ring
    s = len(gens)
    r = F.rank
    degs = []
    for g in gens:
        d = g.degree_or_none()
        degs.append(0 if d is None else d)
    E = FreeModule(ring, r + s, tuple(F.gen_degrees) + tuple(degs))
    lifted = []
    for i, g in enumerate(gens):
        terms = {(c, m): coeff for (c, m), coeff in g.terms.items()}
        terms[(r + i, (0,) * ring.nvars)] = ring.field.one
        lifted.append(Vec(E, terms))
    gb = groebner(lifted)
    S = FreeModule(ring, s, tuple(degs))
    out = []
    for h in gb:
        if any(c < r for (c, _m) in h.terms):
            continue
        out.append(Vec(S, {(c - r, m): coeff for (c, m), coeff in h.terms.items()}))
    return out


def colon_ideal(sub_gens, z: Vec) -> list:
    """Generators of (N : z) = {s : s·z ∈ N} for a submodule N of a free module."""
    if z.is_zero():
        return [z.module.ring.one()]
    syz = syzygy_generators([z] + list(sub_gens))
    out = []
    for s in syz:
        p = s.component(0)
        if not p.is_zero():
            out.append(p)
    return out


def ideal_intersection(I, J, ring=None) -> list:
    """Generators of the intersection of two ideals."""
    I = [p for p in I if not p.is_zero()]
    J = [p for p in J if not p.is_zero()]
    if not I or not J:
        return []
    ring = ring or I[0].ring
    vecs, _F = _as_vecs(I + J, ring)
    out = []
    for s in syzygy_generators(vecs):
        acc = ring.zero()
        for i, p in enumerate(I):
            acc = acc + p * s.component(i)
        if not acc.is_zero():
            out.append(acc)
    return out


def annihilator_of_subquotient(image_gens, kernel_gens, module: FreeModule) -> list:
    """Generators of ann(ker/im) = (im : ker), with the containment im ⊆ ⟨ker⟩ checked."""
    ring = module.ring
    kernel_gens = [g for g in kernel_gens if not g.is_zero()]
    image_gens = [g for g in image_gens if not g.is_zero()]
    if kernel_gens:
        gb_ker = groebner(kernel_gens)
        for g in image_gens:
            if not normal_form_vec(g, gb_ker).is_zero():
                raise PolyError("image is not contained in the kernel submodule")
    if not kernel_gens:
        return [ring.one()]
    ann = None
    for z in kernel_gens:
        c = colon_ideal(image_gens, z)
        cgb = groebner_ideal(c, ring)
        if ann is None:
            ann = list(cgb.gens)
        else:
            ann = ideal_intersection(ann, list(cgb.gens), ring)
            ann = list(groebner_ideal(ann, ring).gens)
        if not ann:
            return []
    return ann if ann is not None else [ring.one()]


def radical_membership(g: Poly, ideal_gens, ring=None) -> bool:
    """True iff g lies in the radical of the ideal (Rabinowitsch trick)."""
    ring = ring or g.ring
    if g.is_zero():
        return True
    gens = [p for p in ideal_gens if not p.is_zero()]
    tname = "_t"
    while tname in ring.names:
        tname = tname + "_"
    ext = PolyRing(ring.field, ring.names + (tname,), ring.degrees + (1,))

    def up(p: Poly) -> Poly:
        return Poly(ext, {m + (0,): c for m, c in p.terms.items()})

    t = ext.variable(ext.nvars - 1)
    system = [up(p) for p in gens]
    system.append(ext.one() - t * up(g))
    gb = groebner_ideal(system, ext)
    return normal_form(ext.one(), gb).is_zero()


# ---------------------------------------------------------------------------
# Hilbert functions


def span_dimensions(gens, degrees, module: FreeModule = None) -> list:
    """dim_k of the degree-t slice of the S-span of the generators, per t."""
    gens = [g for g in gens if not g.is_zero()]
    if module is None:
        if not gens:
            return [0 for _ in degrees]
        module = gens[0].module
    ring = module.ring
    field = ring.field
    out = []
    for t in degrees:
        basis = module.basis_in_degree(t)
        index = {bm: i for i, bm in enumerate(basis)}
        cols = []
        for g in gens:
            dg = g.degree_or_none()
            if dg is None:
                raise PolyError("span_dimensions requires homogeneous generators")
            for mu in ring.monomials_of_degree(t - dg):
                vec = field.zeros((len(basis),))
                for (c, m), coeff in g.term_mul(mu, field.one).terms.items():
                    vec[index[(c, m)]] = coeff
                cols.append(vec)
        if not cols or not basis:
            out.append(0)
            continue
        out.append(Matrix.from_columns(field, cols, len(basis)).rank())
    return out


def hilbert_function(module: FreeModule, numerator_gens, denominator_gens, degrees) -> list:
    """dim_k (⟨numerator⟩/⟨denominator⟩)_t for each degree t in the list."""
    num = span_dimensions(numerator_gens, degrees, module)
    den = span_dimensions(denominator_gens, degrees, module)
    return [a - b for a, b in zip(num, den)]


def map_matrix_in_degree(source: FreeModule, target: FreeModule, columns, t: int, shift: int):
    """Matrix of the S-linear map sending gen j to columns[j], on degree-t input.

    The map is homogeneous of degree `shift`; rows are indexed by the
    degree-(t+shift) basis of the target.  Returns (Matrix, src_basis, tgt_basis).
    """
    ring = source.ring
    field = ring.field
    src = source.basis_in_degree(t)
    tgt = target.basis_in_degree(t + shift)
    index = {bm: i for i, bm in enumerate(tgt)}
    A = field.zeros((len(tgt), len(src)))
    for jcol, (j, mu) in enumerate(src):
        img = columns[j].term_mul(mu, field.one)
        for (c, m), coeff in img.terms.items():
            A[index[(c, m)], jcol] = coeff
    return Matrix(field, A, normalized=True), src, tgt


# ---------------------------------------------------------------------------
# parsing


class ParseError(PolyError):
    pass


def _tokenize(s: str):
    tokens = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            tokens.append(("int", s[i:j]))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(s) and (s[j].isalnum() or s[j] == "_"):
                j += 1
            tokens.append(("name", s[i:j]))
            i = j
            continue
        if ch in "+-*^()/":
            tokens.append((ch, ch))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r} at position {i}")
    tokens.append(("end", ""))
    return tokens


def parse_polynomial(ring: PolyRing, s: str) -> Poly:
    """Parse expressions like "x^2 - 3*x*y + 1/2" into ring elements.

    Multiplication is explicit (*), powers use ^, and a/b is the field
    quotient of two integer literals.
    """
    tokens = _tokenize(s)
    pos = 0

    def peek():
        return tokens[pos][0]

    def take(kind=None):
        nonlocal pos
        tk = tokens[pos]
        if kind is not None and tk[0] != kind:
            raise ParseError(f"expected {kind}, found {tk[1]!r} in {s!r}")
        pos += 1
        return tk

    var_index = {n: i for i, n in enumerate(ring.names)}

    def parse_expr() -> Poly:
        neg = False
        if peek() in ("+", "-"):
            neg = take()[0] == "-"
        acc = parse_term()
        if neg:
            acc = -acc
        while peek() in ("+", "-"):
            op = take()[0]
            t = parse_term()
            acc = acc - t if op == "-" else acc + t
        return acc

    def parse_term() -> Poly:
        acc = parse_factor()
        while peek() == "*":
            take()
            acc = acc * parse_factor()
        return acc

    def parse_factor() -> Poly:
        base = parse_base()
        if peek() == "^":
            take()
            e = int(take("int")[1])
            base = base ** e
        return base

    def parse_base() -> Poly:
        kind, text = take()
        if kind == "int":
            num = int(text)
            if peek() == "/":
                take()
                den = int(take("int")[1])
                return ring.constant(ring.field.div(ring.field.coerce(num), ring.field.coerce(den)))
            return ring.constant(num)
        if kind == "name":
            if text not in var_index:
                raise ParseError(f"unknown variable {text!r} in {s!r}")
            return ring.variable(var_index[text])
        if kind == "(":
            inner = parse_expr()
            take(")")
            return inner
        raise ParseError(f"unexpected token {text!r} in {s!r}")

    out = parse_expr()
    take("end")
    return out
