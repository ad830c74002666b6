"""Exact coefficient fields: prime fields F_p and the rationals.

All linear algebra in this package is exact.  Matrices are numpy arrays
whose entries are either canonical residues 0..p-1 (dtype int64) or
``fractions.Fraction`` objects (dtype object); the field object owns
coercion, normalization and the scalar operations that differ between
the two backends.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The field F_p, elements stored as python ints in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.dtype = np.int64

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def coerce(self, x):
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    # array layer ---------------------------------------------------

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        return np.asarray(arr, dtype=np.int64) % self.p

    def array(self, data) -> np.ndarray:
        return self.normalize(np.array(data, dtype=np.int64))

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def dot(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return a.dot(b) % self.p

    def random_scalar(self, rng) -> int:
        return rng.randrange(self.p)

    def scalar_str(self, a) -> str:
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"F{self.p}"


class Rationals:
    """The rational numbers, elements stored as fractions.Fraction."""

    def __init__(self):
        self.dtype = object

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def coerce(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / Fraction(b)

    # array layer ---------------------------------------------------

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        out = np.asarray(arr, dtype=object)
        if out.size and not isinstance(out.flat[0], Fraction):
            out = np.frompyfunc(Fraction, 1, 1)(out)
        return out

    def array(self, data) -> np.ndarray:
        a = np.empty(np.shape(data), dtype=object)
        flat = a.reshape(-1)
        src = np.asarray(data, dtype=object).reshape(-1)
        for i, x in enumerate(src):
            flat[i] = Fraction(x)
        return a

    def zeros(self, shape) -> np.ndarray:
        a = np.empty(shape, dtype=object)
        a[...] = Fraction(0)
        return a

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros((n, n))
        for i in range(n):
            a[i, i] = Fraction(1)
        return a

    def dot(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] == 0:
            return self.zeros((a.shape[0], b.shape[1]) if b.ndim == 2 else (a.shape[0],))
        out = np.dot(a, b)
        return self.normalize(out)

    def random_scalar(self, rng):
        return Fraction(rng.randrange(-9, 10))

    def scalar_str(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Rationals")

    def __repr__(self):
        return "Q"


QQ = Rationals()


def field_from_string(s: str):
    """Parse a field tag: an integer prime, or "Q" for the rationals."""
    s = s.strip()
    if s.upper() == "Q":
        return QQ
    try:
        p = int(s)
    except ValueError:
        raise FieldError(f"unknown field spec {s!r}") from None
    return PrimeField(p)


def field_to_string(field) -> str:
    return "Q" if isinstance(field, Rationals) else str(field.p)
