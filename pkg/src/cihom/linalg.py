"""Dense exact linear algebra over a coefficient field.

A :class:`Matrix` wraps a numpy array together with its field.  Gaussian
elimination is the workhorse: rank, right kernels, exact solving, and
the :class:`QuotientSpace` helper used everywhere homology is taken.

Vectors are columns.  A basis of a subspace is a Matrix whose columns
are the basis vectors.
"""

from __future__ import annotations

import numpy as np


class LinAlgError(ValueError):
    pass


class Matrix:
    __slots__ = ("field", "a")

    def __init__(self, field, data, normalized: bool = False):
        if isinstance(data, Matrix):
            data = data.a
        arr = np.asarray(data, dtype=field.dtype)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise LinAlgError(f"expected 2-d data, got shape {arr.shape}")
        self.field = field
        self.a = arr if normalized else field.normalize(arr)

    # constructors ----------------------------------------------------

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        return cls(field, field.zeros((rows, cols)), normalized=True)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        return cls(field, field.eye(n), normalized=True)

    @classmethod
    def from_columns(cls, field, columns, rows: int) -> "Matrix":
        """Assemble a matrix from a list of 1-d column vectors."""
        columns = list(columns)
        if not columns:
            return cls.zeros(field, rows, 0)
        arr = np.stack([np.asarray(c, dtype=field.dtype).reshape(-1) for c in columns], axis=1)
        return cls(field, arr)

    # shape -----------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def column(self, j: int) -> np.ndarray:
        return self.a[:, j].copy()

    def columns(self):
        return [self.a[:, j].copy() for j in range(self.cols)]

    # arithmetic ------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, self.field.normalize(self.a + other.a), normalized=True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, self.field.normalize(self.a - other.a), normalized=True)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.field.normalize(-self.a), normalized=True)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LinAlgError(f"shape mismatch {self.a.shape} @ {other.a.shape}")
        return Matrix(self.field, self.field.dot(self.a, other.a), normalized=True)

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        return Matrix(self.field, self.field.normalize(self.a * c), normalized=True)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.a.T.copy(), normalized=True)

    def kron(self, other: "Matrix") -> "Matrix":
        out = np.kron(self.a, other.a)
        return Matrix(self.field, self.field.normalize(out), normalized=True)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.a.shape == other.a.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def is_zero(self) -> bool:
        if self.a.size == 0:
            return True
        zero = self.field.zero
        return bool(np.all(self.a == zero))

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.a.copy(), normalized=True)

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols})"

    # elimination -----------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (Matrix, pivot column tuple)."""
        R, piv = _rref(self.field, self.a)
        return Matrix(self.field, R, normalized=True), piv

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> "Matrix":
        """Columns form a basis of the right kernel {x : A x = 0}."""
        field = self.field
        R, piv = _rref(field, self.a)
        pivset = set(piv)
        free = [j for j in range(self.cols) if j not in pivset]
        basis = field.zeros((self.cols, len(free)))
        for idx, f in enumerate(free):
            basis[f, idx] = field.one
            for i, pc in enumerate(piv):
                basis[pc, idx] = field.neg(R[i, f])
        return Matrix(field, basis, normalized=True)

    def solve(self, b):
        """Some x with A x = b, or None if the system is inconsistent."""
        field = self.field
        vec_input = np.ndim(b) == 1
        B = Matrix(field, np.asarray(b, dtype=field.dtype).reshape(-1, 1)) if vec_input else Matrix(field, b)
        X = self.solve_matrix(B)
        if X is None:
            return None
        return X.a[:, 0] if vec_input else X

    def solve_matrix(self, B: "Matrix"):
        """Some X with A X = B columnwise, or None if any column fails."""
        field = self.field
        if B.rows != self.rows:
            raise LinAlgError("dimension mismatch in solve")
        aug = np.concatenate([self.a, B.a], axis=1)
        R, piv = _rref(field, aug)
        for pc in piv:
            if pc >= self.cols:
                return None
        X = field.zeros((self.cols, B.cols))
        for i, pc in enumerate(piv):
            X[pc, :] = R[i, self.cols:]
        return Matrix(field, X, normalized=True)

    def column_space_basis(self) -> "Matrix":
        """A subset of the columns forming a basis of the column space."""
        _, piv = _rref(self.field, self.a)
        return Matrix.from_columns(self.field, [self.column(j) for j in piv], self.rows)


def _rref(field, A: np.ndarray):
    A = field.normalize(np.array(A, dtype=field.dtype))
    rows, cols = A.shape
    zero = field.zero
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pr = -1
        for i in range(r, rows):
            if A[i, c] != zero:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            A[[r, pr], :] = A[[pr, r], :]
        inv = field.inv(A[r, c])
        A[r, :] = field.normalize(A[r, :] * inv)
        col = A[:, c].copy()
        col[r] = zero
        if np.any(col != zero):
            A = field.normalize(A - np.outer(col, A[r, :]))
        pivots.append(c)
        r += 1
    return A, tuple(pivots)


def hstack(mats) -> Matrix:
    mats = list(mats)
    field = mats[0].field
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise LinAlgError("row mismatch in hstack")
    arr = np.concatenate([m.a for m in mats], axis=1)
    return Matrix(field, arr, normalized=True)


def vstack(mats) -> Matrix:
    mats = list(mats)
    field = mats[0].field
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise LinAlgError("column mismatch in vstack")
    arr = np.concatenate([m.a for m in mats], axis=0)
    return Matrix(field, arr, normalized=True)


def block_diag(mats) -> Matrix:
    mats = list(mats)
    field = mats[0].field
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = field.zeros((rows, cols))
    r = c = 0
    for m in mats:
        out[r:r + m.rows, c:c + m.cols] = m.a
        r += m.rows
        c += m.cols
    return Matrix(field, out, normalized=True)


class EchelonBasis:
    """Incremental Gaussian elimination on column vectors.

    Maintains a self-reduced spanning set; inserting a vector costs one
    reduction pass instead of a fresh elimination of the whole span.
    """

    def __init__(self, field, ambient_dim: int):
        self.field = field
        self.n = ambient_dim
        self.pivots: list[int] = []
        self.vectors: list[np.ndarray] = []

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def reduce(self, v) -> np.ndarray:
        field = self.field
        v = field.normalize(np.asarray(v, dtype=field.dtype).reshape(-1).copy())
        zero = field.zero
        for p, w in zip(self.pivots, self.vectors):
            c = v[p]
            if c != zero:
                v = field.normalize(v - c * w)
        return v

    def insert(self, v) -> bool:
        """Add v to the span; returns True if it enlarged the space."""
        field = self.field
        r = self.reduce(v)
        zero = field.zero
        nz = np.flatnonzero(r != zero)
        if nz.size == 0:
            return False
        p = int(nz[0])
        r = field.normalize(r * field.inv(r[p]))
        self.pivots.append(p)
        self.vectors.append(r)
        return True

    def insert_matrix(self, M: Matrix) -> None:
        for j in range(M.cols):
            self.insert(M.a[:, j])

    def contains(self, v) -> bool:
        zero = self.field.zero
        return not np.any(self.reduce(v) != zero)


def complement_columns(modulo: Matrix, inside: Matrix) -> Matrix:
    """Columns of `inside` whose classes form a basis of (modulo+inside)/modulo."""
    field = modulo.field
    ech = EchelonBasis(field, modulo.rows)
    ech.insert_matrix(modulo)
    chosen = []
    for j in range(inside.cols):
        if ech.insert(inside.column(j)):
            chosen.append(inside.column(j))
    return Matrix.from_columns(field, chosen, modulo.rows)


class LinearSolver:
    """Precomputed elimination for repeated exact solves against one matrix."""

    def __init__(self, A: Matrix):
        self.field = A.field
        self.A = A
        aug = np.concatenate([A.a, A.field.eye(A.rows)], axis=1)
        R, piv = _rref(A.field, aug)
        self.pivots = tuple(pc for pc in piv if pc < A.cols)
        self.R = R[:, :A.cols]
        self.E = R[:, A.cols:]
        self.rank = len(self.pivots)

    def solve(self, v: np.ndarray):
        """Some x with A x = v, or None.  Free coordinates are set to zero."""
        field = self.field
        y = field.dot(self.E, np.asarray(v, dtype=field.dtype).reshape(-1))
        zero = field.zero
        if self.rank < y.shape[0] and np.any(y[self.rank:] != zero):
            return None
        x = field.zeros((self.A.cols,))
        for i, pc in enumerate(self.pivots):
            x[pc] = y[i]
        return x


class QuotientSpace:
    """Coordinates on Z/B for subspaces B <= Z of k^n given by spanning columns."""

    def __init__(self, field, ambient_dim: int, B: Matrix, Z: Matrix):
        self.field = field
        self.ambient_dim = ambient_dim
        ech = EchelonBasis(field, ambient_dim)
        b_cols = []
        for j in range(B.cols):
            if ech.insert(B.column(j)):
                b_cols.append(B.column(j))
        reps = []
        for j in range(Z.cols):
            if ech.insert(Z.column(j)):
                reps.append(Z.column(j))
        self.B = Matrix.from_columns(field, b_cols, ambient_dim)
        self.reps = Matrix.from_columns(field, reps, ambient_dim)
        total = hstack([self.B, self.reps]) if (self.B.cols + self.reps.cols) else None
        self._solver = LinearSolver(total) if total is not None else None

    @property
    def dim(self) -> int:
        return self.reps.cols

    def project(self, v: np.ndarray):
        """Class coordinates of an ambient vector lying in Z; None if outside."""
        if self._solver is None:
            zero = self.field.zero
            if np.any(np.asarray(v) != zero):
                return None
            return self.field.zeros((0,))
        x = self._solver.solve(v)
        if x is None:
            return None
        return x[self.B.cols:]

    def project_matrix(self, M: Matrix):
        cols = []
        for j in range(M.cols):
            c = self.project(M.column(j))
            if c is None:
                return None
            cols.append(c)
        return Matrix.from_columns(self.field, cols, self.dim)

    def lift(self, coords: np.ndarray) -> np.ndarray:
        if self.reps.cols == 0:
            return self.field.zeros((self.ambient_dim,))
        return self.field.dot(self.reps.a, np.asarray(coords, dtype=self.field.dtype).reshape(-1))


def intersect_column_spaces(A: Matrix, B: Matrix) -> Matrix:
    """Basis of colspace(A) ∩ colspace(B)."""
    field = A.field
    if A.cols == 0 or B.cols == 0:
        return Matrix.zeros(field, A.rows, 0)
    stacked = hstack([A, -B])
    ker = stacked.kernel_basis()
    if ker.cols == 0:
        return Matrix.zeros(field, A.rows, 0)
    vecs = A @ Matrix(field, ker.a[:A.cols, :], normalized=True)
    return vecs.column_space_basis()


def restrict_to_coordinates(span: Matrix, zero_rows) -> Matrix:
    """Basis of the subspace of colspace(span) vanishing on the given rows."""
    field = span.field
    zero_rows = list(zero_rows)
    if span.cols == 0:
        return Matrix.zeros(field, span.rows, 0)
    if not zero_rows:
        return span.column_space_basis()
    sub = Matrix(field, span.a[zero_rows, :], normalized=True)
    ker = sub.kernel_basis()
    if ker.cols == 0:
        return Matrix.zeros(field, span.rows, 0)
    return (span @ ker).column_space_basis()
