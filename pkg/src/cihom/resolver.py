"""Minimal semifree resolutions, Ext/Tor tables, duals, and complexity fits.

The resolution engine works over any of the finite-dimensional algebras
in this package (a ring concentrated in degree 0, an exterior algebra,
a Koszul complex) and resolves any finite DG module, including bounded
complexes of modules.

The construction processes homological degrees upward.  At degree d it
first adjoins generators killing the kernel of H_{d-1}(ε) (choosing a
Nakayama-minimal set of classes, with cycle representatives inside
(augmentation ideal)·F so the resolution stays minimal), then adjoins
generators hitting a Nakayama-minimal spanning set of the cokernel of
H_d(ε).  Generators adjoined with zero differential sit in stage 0;
a killing generator sits one stage above the deepest generator its
differential touches.  For a module over a ring in degree 0 the stages
coincide with homological degrees and the stage ranks are the classical
Betti numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .dgalgebra import FiniteDGAlgebra, QuotientRing
from .dgmodule import FiniteDGModule
from .linalg import (
    EchelonBasis,
    Matrix,
    QuotientSpace,
    complement_columns,
    hstack,
    restrict_to_coordinates,
)


class ResolutionError(RuntimeError):
    pass


class UnstableFitError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# degreewise slices of a finite DG module


class ModuleSlices:
    """Per-degree bases, differential blocks, cycles and boundaries of a module."""

    def __init__(self, M: FiniteDGModule):
        self.M = M
        self.field = M.field
        self._cache: dict = {}

    def indices(self, d: int) -> list:
        return self.M.basis_by_degree().get(d, [])

    def dim(self, d: int) -> int:
        return len(self.indices(d))

    def inject(self, d: int, local: np.ndarray) -> np.ndarray:
        out = self.field.zeros((self.M.dim,))
        for pos, i in enumerate(self.indices(d)):
            out[i] = local[pos]
        return out

    def restrict(self, d: int, vec: np.ndarray) -> np.ndarray:
        idx = self.indices(d)
        return np.asarray(vec, dtype=self.field.dtype)[idx] if idx else self.field.zeros((0,))

    def dblock(self, d: int) -> Matrix:
        """Differential from degree d to degree d-1, in local coordinates."""
        key = ("d", d)
        if key not in self._cache:
            rows = self.indices(d - 1)
            cols = self.indices(d)
            out = self.field.zeros((len(rows), len(cols)))
            for cpos, j in enumerate(cols):
                col = self.M.diff.a[:, j]
                for rpos, i in enumerate(rows):
                    out[rpos, cpos] = col[i]
            self._cache[key] = Matrix(self.field, out, normalized=True)
        return self._cache[key]

    def cycles(self, d: int) -> Matrix:
        key = ("z", d)
        if key not in self._cache:
            self._cache[key] = self.dblock(d).kernel_basis()
        return self._cache[key]

    def boundaries(self, d: int) -> Matrix:
        key = ("b", d)
        if key not in self._cache:
            blk = self.dblock(d + 1)
            self._cache[key] = blk.column_space_basis() if blk.cols else Matrix.zeros(self.field, self.dim(d), 0)
        return self._cache[key]

    def action_block(self, a: int, d: int) -> Matrix:
        """Action of a degree-0 algebra basis element on the degree-d slice."""
        key = ("a", a, d)
        if key not in self._cache:
            idx = self.indices(d)
            act = self.M.actions[a].a
            out = self.field.zeros((len(idx), len(idx)))
            for cpos, j in enumerate(idx):
                for rpos, i in enumerate(idx):
                    out[rpos, cpos] = act[i, j]
            self._cache[key] = Matrix(self.field, out, normalized=True)
        return self._cache[key]

    def homology_dimension(self, d: int) -> int:
        return self.cycles(d).cols - self.dblock(d + 1).rank()


def homology_dimensions(M: FiniteDGModule, degrees) -> list:
    sl = ModuleSlices(M)
    return [sl.homology_dimension(d) for d in degrees]


# ---------------------------------------------------------------------------
# semifree resolutions


@dataclass
class Generator:
    index: int
    degree: int
    stage: int
    dcols: dict            # gen index -> algebra coefficient vector
    eps: np.ndarray        # augmentation image in the resolved module


@dataclass
class SemifreeResolution:
    algebra: FiniteDGAlgebra
    target: FiniteDGModule
    gens: list = dc_field(default_factory=list)
    depth: int = 0
    flagged: bool = False
    flag_reason: str = ""

    @property
    def field(self):
        return self.algebra.field

    def betti_by_stage(self) -> list:
        if not self.gens:
            return []
        top = max(g.stage for g in self.gens)
        out = [0] * (top + 1)
        for g in self.gens:
            out[g.stage] += 1
        return out

    def generators_by_degree(self) -> dict:
        out: dict = {}
        for g in self.gens:
            out[g.degree] = out.get(g.degree, 0) + 1
        return out

    def total_dimension(self) -> int:
        return len(self.gens) * self.algebra.dim

    # degreewise free-module bases -------------------------------------

    def f_basis(self, d: int) -> list:
        """Basis of F_d as (generator, algebra basis index) pairs."""
        A = self.algebra
        out = []
        for g in self.gens:
            for a in A.basis_by_degree().get(d - g.degree, []):
                out.append((g.index, a))
        return out

    def f_index(self, d: int) -> dict:
        return {pair: i for i, pair in enumerate(self.f_basis(d))}

    def diff_matrix(self, d: int) -> Matrix:
        """∂: F_d → F_{d-1} on the degreewise bases."""
        A = self.algebra
        fld = self.field
        src = self.f_basis(d)
        tgt_index = self.f_index(d - 1)
        out = fld.zeros((len(tgt_index), len(src)))
        gen_by_index = {g.index: g for g in self.gens}
        for cpos, (gi, a) in enumerate(src):
            # ∂(a⊗g) = (∂a)⊗g + (-1)^{|a|} Σ (a·α_{g'})⊗g'
            da = A.diff.a[:, a]
            for b in np.flatnonzero(da != fld.zero):
                out[tgt_index[(gi, int(b))], cpos] = fld.add(
                    out[tgt_index[(gi, int(b))], cpos], da[int(b)]
                )
            g = gen_by_index[gi]
            sgn = -1 if A.degrees[a] % 2 else 1
            for gj, alpha in g.dcols.items():
                prod = A.multiply(_unit_vec(fld, A.dim, a), alpha)
                if sgn < 0:
                    prod = fld.normalize(-prod)
                for b in np.flatnonzero(prod != fld.zero):
                    key = (gj, int(b))
                    out[tgt_index[key], cpos] = fld.add(out[tgt_index[key], cpos], prod[int(b)])
        return Matrix(fld, out, normalized=True)

    def eps_matrix(self, d: int) -> Matrix:
        """ε: F_d → M_d in local coordinates of the target slice."""
        fld = self.field
        src = self.f_basis(d)
        sl = ModuleSlices(self.target)
        idx = sl.indices(d)
        gen_by_index = {g.index: g for g in self.gens}
        out = fld.zeros((len(idx), len(src)))
        for cpos, (gi, a) in enumerate(src):
            g = gen_by_index[gi]
            img = fld.dot(self.target.actions[a].a, g.eps)
            out[:, cpos] = sl.restrict(d, img)
        return Matrix(fld, out, normalized=True)

    def free_action_block(self, a: int, d: int) -> Matrix:
        """Action of a degree-0 algebra element on F_d (degree preserved)."""
        A = self.algebra
        fld = self.field
        basis = self.f_basis(d)
        index = {pair: i for i, pair in enumerate(basis)}
        out = fld.zeros((len(basis), len(basis)))
        for cpos, (gi, b) in enumerate(basis):
            prod = A.mult[a, b]
            for c in np.flatnonzero(prod != fld.zero):
                out[index[(gi, int(c))], cpos] = prod[int(c)]
        return Matrix(fld, out, normalized=True)

    def unit_rows(self, d: int) -> list:
        A = self.algebra
        return [i for i, (_gi, a) in enumerate(self.f_basis(d)) if a == A.unit_index]

    # verification helpers ----------------------------------------------

    def is_minimal(self) -> bool:
        fld = self.field
        unit = self.algebra.unit_index
        for g in self.gens:
            for alpha in g.dcols.values():
                if alpha[unit] != fld.zero:
                    return False
        return True

    def quasi_iso_defect(self, d: int) -> int:
        """dim H_d of the mapping cone of ε; zero means exact at degree d."""
        fld = self.field
        sl = ModuleSlices(self.target)

        def cone_block(dd):
            # C_dd = M_dd ⊕ F_{dd-1}; differential [[∂M, ε],[0, -∂F]]
            m_rows = sl.dim(dd - 1)
            f_rows = len(self.f_basis(dd - 2))
            m_cols = sl.dim(dd)
            f_cols = len(self.f_basis(dd - 1))
            out = fld.zeros((m_rows + f_rows, m_cols + f_cols))
            out[:m_rows, :m_cols] = sl.dblock(dd).a
            out[:m_rows, m_cols:] = self.eps_matrix(dd - 1).a
            out[m_rows:, m_cols:] = fld.normalize(-self.diff_matrix(dd - 1).a)
            return Matrix(fld, out, normalized=True)

        blk_out = cone_block(d)
        blk_in = cone_block(d + 1)
        return blk_out.kernel_basis().cols - blk_in.rank()


def _unit_vec(fld, n, i):
    v = fld.zeros((n,))
    v[i] = fld.one
    return v


def semifree_resolution(
    A: FiniteDGAlgebra,
    M: FiniteDGModule,
    n_max: int,
    dim_cap: int = 40000,
) -> SemifreeResolution:
    """Minimal semifree resolution of M through homological degree n_max."""
    fld = A.field
    res = SemifreeResolution(algebra=A, target=M)
    if M.dim == 0:
        res.depth = n_max
        return res
    sl = ModuleSlices(M)
    dmin = min(M.degrees)
    m0 = A.degree_zero_ideal_indices()
    counter = 0

    for d in range(dmin, n_max + 1):
        # (1) kill the kernel of H_{d-1}(ε)
        dF = res.diff_matrix(d - 1)
        fdim = dF.cols
        if fdim:
            zF = dF.kernel_basis()
        else:
            zF = Matrix.zeros(fld, 0, 0)
        if zF.cols:
            eps_prev = res.eps_matrix(d - 1)
            bM = sl.boundaries(d - 1)
            qM = QuotientSpace(fld, sl.dim(d - 1), bM, Matrix.identity(fld, sl.dim(d - 1)))
            proj_eps = qM.project_matrix(eps_prev)
            # U = cycles of F_{d-1} whose augmentation image is a boundary
            if proj_eps.rows:
                coords = proj_eps @ zF
                kill_coeff = coords.kernel_basis()
            else:
                kill_coeff = Matrix.identity(fld, zF.cols)
            U = zF @ kill_coeff
            if U.cols:
                killed = EchelonBasis(fld, fdim)
                dF_next = res.diff_matrix(d)
                killed.insert_matrix(dF_next.column_space_basis() if dF_next.cols else Matrix.zeros(fld, fdim, 0))
                for a in m0:
                    killed.insert_matrix(res.free_action_block(a, d - 1) @ U)
                killed_mat = Matrix.from_columns(fld, killed.vectors, fdim)
                target_dim = _quotient_dim(killed_mat, U)
                U_min = restrict_to_coordinates(U, res.unit_rows(d - 1))
                reps = complement_columns(killed_mat, U_min)
                if reps.cols != target_dim:
                    raise ResolutionError(
                        "cannot choose minimal killing generators inside the augmentation ideal "
                        f"at degree {d - 1} (needed {target_dim}, found {reps.cols})"
                    )
                basis_prev = res.f_basis(d - 1)
                dblock_d = sl.dblock(d)
                for c in range(reps.cols):
                    f = reps.column(c)
                    eps_f = fld.dot(eps_prev.a, f)
                    m_local = dblock_d.solve(eps_f)
                    if m_local is None:
                        raise ResolutionError("augmentation image of a killing cycle is not a boundary")
                    stage = 1 + max(
                        next(g.stage for g in res.gens if g.index == basis_prev[i][0])
                        for i in np.flatnonzero(f != fld.zero)
                    )
                    dcols: dict = {}
                    for i in np.flatnonzero(f != fld.zero):
                        gi, a = basis_prev[int(i)]
                        vec = dcols.setdefault(gi, fld.zeros((A.dim,)))
                        vec[a] = fld.add(vec[a], f[int(i)])
                    res.gens.append(
                        Generator(index=counter, degree=d, stage=stage, dcols=dcols, eps=sl.inject(d, m_local))
                    )
                    counter += 1

        # (2) hit a minimal generating set of coker H_d(ε)
        zM = sl.cycles(d)
        if zM.cols:
            killed = EchelonBasis(fld, sl.dim(d))
            killed.insert_matrix(sl.boundaries(d))
            dF_d = res.diff_matrix(d)
            zF_d = dF_d.kernel_basis() if dF_d.cols else Matrix.zeros(fld, len(res.f_basis(d)), 0)
            if zF_d.cols:
                killed.insert_matrix(res.eps_matrix(d) @ zF_d)
            for a in m0:
                killed.insert_matrix(sl.action_block(a, d) @ zM)
            killed_mat = Matrix.from_columns(fld, killed.vectors, sl.dim(d))
            reps = complement_columns(killed_mat, zM)
            for c in range(reps.cols):
                res.gens.append(
                    Generator(
                        index=counter,
                        degree=d,
                        stage=0,
                        dcols={},
                        eps=sl.inject(d, reps.column(c)),
                    )
                )
                counter += 1

        if res.total_dimension() > dim_cap:
            res.flagged = True
            res.flag_reason = f"dimension cap {dim_cap} exceeded at degree {d}"
            res.depth = d
            return res

    res.depth = n_max
    return res


def _quotient_dim(killed: Matrix, U: Matrix) -> int:
    if U.cols == 0:
        return 0
    return hstack([killed, U]).rank() - killed.rank()


# ---------------------------------------------------------------------------
# Ext and Tor


@dataclass
class ExtTable:
    n_values: list
    dims: list
    gen_dims: list
    flagged: bool = False

    def as_dict(self) -> dict:
        return {
            "n": list(self.n_values),
            "dim": list(self.dims),
            "generators": list(self.gen_dims),
            "flagged": self.flagged,
        }

    def complexity(self, window: int = 6, strict: bool = True) -> "ComplexityEstimate":
        return complexity_fit(self.gen_dims, n0=self.n_values[0], window=window, strict=strict)


def _hom_basis(res: SemifreeResolution, N: FiniteDGModule, t: int) -> list:
    out = []
    for g in res.gens:
        for n, dn in enumerate(N.degrees):
            if dn - g.degree == t:
                out.append((g.index, n))
    return out


def _hom_diff(res: SemifreeResolution, N: FiniteDGModule, t: int) -> Matrix:
    """Differential Hom_t → Hom_{t-1} for Hom_A(F, N)."""
    fld = res.field
    A = res.algebra
    src = _hom_basis(res, N, t)
    tgt = _hom_basis(res, N, t - 1)
    tgt_index = {pair: i for i, pair in enumerate(tgt)}
    out = fld.zeros((len(tgt), len(src)))
    gen_by_index = {g.index: g for g in res.gens}
    incoming: dict = {}
    for g in res.gens:
        for gj, alpha in g.dcols.items():
            incoming.setdefault(gj, []).append((g.index, alpha))
    for cpos, (gi, n) in enumerate(src):
        nvec = _unit_vec(fld, N.dim, n)
        # ∂N ∘ φ
        dn = fld.dot(N.diff.a, nvec)
        for n2 in np.flatnonzero(dn != fld.zero):
            key = (gi, int(n2))
            if key in tgt_index:
                out[tgt_index[key], cpos] = fld.add(out[tgt_index[key], cpos], dn[int(n2)])
        # -(-1)^{|φ|} φ ∘ ∂F : collect generators whose differential hits gi
        for (gsrc, alpha) in incoming.get(gi, []):
            for b in np.flatnonzero(alpha != fld.zero):
                coeff = alpha[int(b)]
                # sign: -(-1)^{t(1+|b|)}
                s = (t * (1 + A.degrees[int(b)])) % 2
                img = fld.dot(N.actions[int(b)].a, nvec)
                img = fld.normalize(img * coeff)
                if s == 0:
                    img = fld.normalize(-img)
                for n2 in np.flatnonzero(img != fld.zero):
                    key = (gsrc, int(n2))
                    out[tgt_index[key], cpos] = fld.add(out[tgt_index[key], cpos], img[int(n2)])
    return Matrix(fld, out, normalized=True)


def ext_table(
    A: FiniteDGAlgebra,
    M: FiniteDGModule,
    N: FiniteDGModule,
    n_max: int,
    n_min: int = 0,
    resolution: SemifreeResolution | None = None,
    dim_cap: int = 40000,
) -> ExtTable:
    """dim Ext^n_A(M, N) and its minimal generator counts for n in [n_min, n_max].

    Ext^n is homology in degree -n of Hom_A(F, N) for a minimal semifree
    resolution F of M.
    """
    if N.dim == 0 or M.dim == 0:
        ns = list(range(n_min, n_max + 1))
        return ExtTable(ns, [0] * len(ns), [0] * len(ns))
    need = n_max + max(N.degrees) + 1
    if resolution is None or resolution.depth < need:
        resolution = semifree_resolution(A, M, need, dim_cap=dim_cap)
    fld = A.field
    m0 = A.degree_zero_ideal_indices()
    ns = list(range(n_min, n_max + 1))
    dims = []
    gen_dims = []
    for n in ns:
        t = -n
        d_out = _hom_diff(resolution, N, t)
        d_in = _hom_diff(resolution, N, t + 1)
        Z = d_out.kernel_basis()
        H = QuotientSpace(fld, Z.rows, d_in.column_space_basis() if d_in.cols else Matrix.zeros(fld, Z.rows, 0), Z)
        dims.append(H.dim)
        if not m0 or H.dim == 0:
            gen_dims.append(H.dim)
            continue
        basis_t = _hom_basis(resolution, N, t)
        sub = EchelonBasis(fld, H.dim)
        for a in m0:
            # action on Hom by postcomposition with the module action
            act = fld.zeros((len(basis_t), len(basis_t)))
            index = {pair: i for i, pair in enumerate(basis_t)}
            for cpos, (gi, nn) in enumerate(basis_t):
                img = N.actions[a].a[:, nn]
                for n2 in np.flatnonzero(img != fld.zero):
                    act[index[(gi, int(n2))], cpos] = img[int(n2)]
            moved = Matrix(fld, act, normalized=True) @ Z
            coords = H.project_matrix(moved)
            if coords is not None:
                sub.insert_matrix(coords)
        gen_dims.append(H.dim - sub.dim)
    return ExtTable(ns, dims, gen_dims, flagged=resolution.flagged)


def tor_table(
    A: FiniteDGAlgebra,
    M: FiniteDGModule,
    N: FiniteDGModule,
    n_max: int,
    resolution: SemifreeResolution | None = None,
    dim_cap: int = 40000,
) -> ExtTable:
    """dim Tor_i^A(M, N) for 0 <= i <= n_max, via F ⊗_A N."""
    if N.dim == 0 or M.dim == 0:
        ns = list(range(0, n_max + 1))
        return ExtTable(ns, [0] * len(ns), [0] * len(ns))
    need = n_max - min(N.degrees) + 1
    if resolution is None or resolution.depth < need:
        resolution = semifree_resolution(A, M, need, dim_cap=dim_cap)
    fld = A.field

    def basis(t):
        out = []
        for g in resolution.gens:
            for n, dn in enumerate(N.degrees):
                if g.degree + dn == t:
                    out.append((g.index, n))
        return out

    def diff(t):
        src = basis(t)
        tgt = basis(t - 1)
        tgt_index = {pair: i for i, pair in enumerate(tgt)}
        out = fld.zeros((len(tgt), len(src)))
        gen_by_index = {g.index: g for g in resolution.gens}
        for cpos, (gi, n) in enumerate(src):
            g = gen_by_index[gi]
            nvec = _unit_vec(fld, N.dim, n)
            # Σ (-1)^{|b||g'|} g' ⊗ (b·n)
            for gj, alpha in g.dcols.items():
                dgj = gen_by_index[gj].degree
                for b in np.flatnonzero(alpha != fld.zero):
                    img = fld.dot(N.actions[int(b)].a, nvec)
                    img = fld.normalize(img * alpha[int(b)])
                    if (A.degrees[int(b)] * dgj) % 2:
                        img = fld.normalize(-img)
                    for n2 in np.flatnonzero(img != fld.zero):
                        key = (gj, int(n2))
                        out[tgt_index[key], cpos] = fld.add(out[tgt_index[key], cpos], img[int(n2)])
            # (-1)^{|g|} g ⊗ ∂n
            dn = fld.dot(N.diff.a, nvec)
            if g.degree % 2:
                dn = fld.normalize(-dn)
            for n2 in np.flatnonzero(dn != fld.zero):
                key = (gi, int(n2))
                out[tgt_index[key], cpos] = fld.add(out[tgt_index[key], cpos], dn[int(n2)])
        return Matrix(fld, out, normalized=True)

    ns = list(range(0, n_max + 1))
    dims = []
    for i in ns:
        d_out = diff(i)
        d_in = diff(i + 1)
        dims.append(d_out.kernel_basis().cols - d_in.rank())
    return ExtTable(ns, dims, list(dims), flagged=resolution.flagged)


# ---------------------------------------------------------------------------
# ring-side duals


@dataclass
class DualComplex:
    module: FiniteDGModule
    reliable: bool
    boundary_homology: list

    def h0_module(self) -> FiniteDGModule:
        """H_0 of the dual complex as a module in degree 0 over the same ring."""
        fld = self.module.field
        sl = ModuleSlices(self.module)
        Z = sl.cycles(0)
        B = sl.boundaries(0)
        q = QuotientSpace(fld, sl.dim(0), B, Z)
        idx0 = sl.indices(0)
        A = self.module.algebra
        actions = []
        for a in range(A.dim):
            cols = []
            for c in range(q.dim):
                local = q.reps.column(c)
                vec = fld.zeros((self.module.dim,))
                for pos, i in enumerate(idx0):
                    vec[i] = local[pos]
                img = fld.dot(self.module.actions[a].a, vec)
                img_local = sl.restrict(0, img)
                coords = q.project(img_local)
                if coords is None:
                    raise ResolutionError("degree-0 homology is not action-stable")
                cols.append(coords)
            actions.append(Matrix.from_columns(fld, cols, q.dim))
        return FiniteDGModule(
            A,
            tuple(0 for _ in range(q.dim)),
            Matrix.zeros(fld, q.dim, q.dim),
            actions,
            name=f"H0({self.module.name})",
        )


def hom_complex_module(res: SemifreeResolution, N: FiniteDGModule) -> FiniteDGModule:
    """Hom_A(F, N) as a DG module over A (A acting through the target)."""
    A = res.algebra
    fld = res.field
    pairs = [(g.index, n) for g in res.gens for n in range(N.dim)]
    gen_by_index = {g.index: g for g in res.gens}
    degrees = tuple(N.degrees[n] - gen_by_index[gi].degree for gi, n in pairs)
    index = {pair: i for i, pair in enumerate(pairs)}
    dim = len(pairs)
    diff = fld.zeros((dim, dim))
    incoming: dict = {}
    for g in res.gens:
        for gj, alpha in g.dcols.items():
            incoming.setdefault(gj, []).append((g.index, alpha))
    for cpos, (gi, n) in enumerate(pairs):
        t = degrees[cpos]
        nvec = _unit_vec(fld, N.dim, n)
        dn = fld.dot(N.diff.a, nvec)
        for n2 in np.flatnonzero(dn != fld.zero):
            diff[index[(gi, int(n2))], cpos] = fld.add(diff[index[(gi, int(n2))], cpos], dn[int(n2)])
        for (gsrc, alpha) in incoming.get(gi, []):
            for b in np.flatnonzero(alpha != fld.zero):
                s = (t * (1 + A.degrees[int(b)])) % 2
                img = fld.dot(N.actions[int(b)].a, nvec)
                img = fld.normalize(img * alpha[int(b)])
                if s == 0:
                    img = fld.normalize(-img)
                for n2 in np.flatnonzero(img != fld.zero):
                    diff[index[(gsrc, int(n2))], cpos] = fld.add(
                        diff[index[(gsrc, int(n2))], cpos], img[int(n2)]
                    )
    actions = []
    for a in range(A.dim):
        act = fld.zeros((dim, dim))
        for cpos, (gi, n) in enumerate(pairs):
            img = N.actions[a].a[:, n]
            for n2 in np.flatnonzero(img != fld.zero):
                act[index[(gi, int(n2))], cpos] = img[int(n2)]
        actions.append(Matrix(fld, act, normalized=True))
    labels = tuple(f"[g{gi}]*{N.labels[n]}" for gi, n in pairs)
    return FiniteDGModule(A, degrees, Matrix(fld, diff, normalized=True), actions, labels, name=f"Hom(F,{N.name})")


def ring_dual(qr: QuotientRing, M: FiniteDGModule, depth: int = 5) -> DualComplex:
    """RHom_R(M, R) computed as Hom_R(F, R) for a depth-truncated resolution.

    Over an artinian complete intersection the result of dualizing a
    module has homology only in degree 0; nonzero homology at the
    truncation boundary is reported and marks the complex unreliable.
    """
    from .dgmodule import module_from_algebra

    A = qr.algebra
    res = semifree_resolution(A, M, depth + 2)
    R = module_from_algebra(A)
    dualmod = hom_complex_module(res, R)
    boundary = homology_dimensions(dualmod, list(range(-depth - 1, 0)))
    reliable = all(h == 0 for h in boundary)
    return DualComplex(module=dualmod, reliable=reliable, boundary_homology=boundary)


# ---------------------------------------------------------------------------
# complexity


@dataclass
class ComplexityEstimate:
    degree: int
    stable: bool
    parity_degrees: tuple
    window: int
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "stable": self.stable,
            "parity_degrees": list(self.parity_degrees),
            "window": self.window,
            "note": self.note,
        }


def _tail_poly_degree(seq: list, window: int):
    """Polynomial degree of the eventual growth, or None if eventually zero.

    Returns (degree_or_None, stabilized: bool).
    """
    if len(seq) < window + 1:
        return None, False
    if all(v == 0 for v in seq[-window:]):
        return None, True
    cur = list(seq)
    for r in range(0, len(seq)):
        tail = cur[-window:] if len(cur) >= window else cur
        if len(tail) >= window and len(set(tail)) == 1:
            if tail[0] == 0:
                # stabilized at zero: genuine degree is below r; treat as r-1
                return max(r - 1, 0), True
            return r, True
        if len(cur) <= window:
            break
        cur = [b - a for a, b in zip(cur, cur[1:])]
    return None, False


def complexity_fit(seq, n0: int = 0, window: int = 6, strict: bool = True) -> ComplexityEstimate:
    """Polynomial growth degree of a sequence: 0 if eventually zero, else
    1 + (degree of the eventual polynomial), fitted separately on the
    even- and odd-index subsequences (the operators acting on Ext have
    degree 2, so each parity is eventually polynomial on its own).
    """
    seq = [int(v) for v in seq]
    evens = [v for i, v in enumerate(seq) if (n0 + i) % 2 == 0]
    odds = [v for i, v in enumerate(seq) if (n0 + i) % 2 == 1]
    results = []
    stable = True
    for sub in (evens, odds):
        deg, ok = _tail_poly_degree(sub, window)
        if not ok:
            if strict:
                raise UnstableFitError("unstable window, increase n_max")
            stable = False
        results.append(deg)
    nonvanishing = [r for r in results if r is not None]
    d = 0 if not nonvanishing else 1 + max(nonvanishing)
    return ComplexityEstimate(
        degree=d,
        stable=stable,
        parity_degrees=tuple(-1 if r is None else r for r in results),
        window=window,
    )


def eventually_vanishes(seq, window: int = 6) -> bool:
    """Heuristic: the last `window` values vanish and the fitted growth is 0."""
    seq = list(seq)
    if len(seq) < window:
        return False
    if any(v != 0 for v in seq[-window:]):
        return False
    try:
        est = complexity_fit(seq, window=window, strict=True)
    except UnstableFitError:
        return False
    return est.degree == 0
