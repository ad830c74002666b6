import random

import numpy as np
import pytest

from cihom.fields import QQ, FieldError, PrimeField, field_from_string, field_to_string
from cihom.linalg import (
    EchelonBasis,
    Matrix,
    QuotientSpace,
    complement_columns,
    intersect_column_spaces,
    restrict_to_coordinates,
)

F101 = PrimeField(101)


def test_prime_field_rejects_composites():
    with pytest.raises(FieldError):
        PrimeField(100)


def test_field_round_trips():
    rng = random.Random(7)
    for field in (F101, QQ):
        for _ in range(200):
            a = field.random_scalar(rng)
            b = field.random_scalar(rng)
            assert field.sub(field.add(a, b), b) == field.coerce(a)
            if b != field.zero:
                assert field.div(field.mul(a, b), b) == field.coerce(a)


def test_field_string_round_trip():
    assert field_from_string("101") == F101
    assert field_from_string("Q") == QQ
    assert field_to_string(F101) == "101"
    assert field_to_string(QQ) == "Q"


def test_rank_empty_matrix():
    assert Matrix.zeros(F101, 0, 0).rank() == 0


def test_rank_identity():
    assert Matrix.identity(F101, 3).rank() == 3


def test_rank_proportional_rows_over_q():
    m = Matrix(QQ, [[1, 2], [2, 4]])
    assert m.rank() == 1


def test_kernel_identity_empty():
    assert Matrix.identity(F101, 4).kernel_basis().cols == 0


def test_kernel_zero_matrix():
    k = Matrix.zeros(F101, 2, 2).kernel_basis()
    assert k.cols == 2


def test_kernel_one_row():
    a = Matrix(F101, [[1, 1]])
    k = a.kernel_basis()
    assert k.cols == 1
    assert (a @ k).is_zero()


def test_solve_identity():
    a = Matrix.identity(F101, 3)
    b = np.array([4, 5, 6])
    x = a.solve(b)
    assert list(x) == [4, 5, 6]


def test_solve_inconsistent():
    a = Matrix(F101, [[1, 0], [0, 0]])
    assert a.solve(np.array([0, 1])) is None


def test_solve_rational_half():
    a = Matrix(QQ, [[2]])
    x = a.solve(QQ.array([1]).reshape(-1))
    assert x[0] == QQ.coerce(1) / 2


def test_rank_nullity_random():
    rng = random.Random(31)
    for field in (F101, QQ):
        for _ in range(30):
            r = rng.randrange(0, 6)
            c = rng.randrange(0, 6)
            data = [[field.random_scalar(rng) for _ in range(c)] for _ in range(r)]
            m = Matrix(field, field.array(data).reshape(r, c), normalized=False) if r * c else Matrix.zeros(field, r, c)
            assert m.rank() + m.kernel_basis().cols == c
            k = m.kernel_basis()
            if k.cols:
                assert (m @ k).is_zero()


def test_solve_matches_product():
    rng = random.Random(5)
    for _ in range(25):
        r, c = rng.randrange(1, 6), rng.randrange(1, 6)
        m = Matrix(F101, [[rng.randrange(101) for _ in range(c)] for _ in range(r)])
        x0 = np.array([rng.randrange(101) for _ in range(c)])
        b = F101.dot(m.a, x0)
        x = m.solve(b)
        assert x is not None
        assert np.array_equal(F101.dot(m.a, x), b)


def test_echelon_basis_incremental():
    ech = EchelonBasis(F101, 3)
    assert ech.insert(np.array([1, 2, 3]))
    assert ech.insert(np.array([0, 1, 1]))
    assert not ech.insert(np.array([1, 3, 4]))
    assert ech.dim == 2
    assert ech.contains(np.array([2, 5, 7]))


def test_quotient_space_projection():
    # Z = span(e1, e2), B = span(e1) inside k^3
    B = Matrix(F101, [[1], [0], [0]])
    Z = Matrix(F101, [[1, 0], [0, 1], [0, 0]])
    q = QuotientSpace(F101, 3, B, Z)
    assert q.dim == 1
    coords = q.project(np.array([5, 7, 0]))
    assert coords is not None and coords[0] == 7
    assert q.project(np.array([0, 0, 1])) is None


def test_complement_columns():
    modulo = Matrix(F101, [[1], [0], [0]])
    inside = Matrix(F101, [[1, 2, 0], [0, 1, 1], [0, 0, 0]])
    comp = complement_columns(modulo, inside)
    assert comp.cols == 1


def test_intersection_of_column_spaces():
    a = Matrix(F101, [[1, 0], [0, 1], [0, 0]])
    b = Matrix(F101, [[0, 0], [1, 0], [0, 1]])
    inter = intersect_column_spaces(a, b)
    assert inter.cols == 1
    v = inter.column(0)
    assert v[0] == 0 and v[2] == 0 and v[1] != 0


def test_restrict_to_coordinates():
    span = Matrix(F101, [[1, 0], [1, 1], [0, 1]])
    res = restrict_to_coordinates(span, [0])
    assert res.cols == 1
    assert res.column(0)[0] == 0
