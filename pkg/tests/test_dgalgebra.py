import numpy as np
import pytest

from cihom.dgalgebra import (
    DGError,
    QuotientRing,
    exterior_algebra,
    koszul_complex,
    koszul_on_maximal_ideal,
    validate_algebra,
)
from cihom.fields import QQ, PrimeField

F101 = PrimeField(101)


def test_exterior_algebra_basics():
    L = exterior_algebra(2, F101)
    assert L.dim == 4
    assert L.degrees == (0, 1, 1, 2)
    assert L.labels == ("1", "e1", "e2", "e12")
    assert validate_algebra(L).ok


def test_exterior_algebra_char2_rejected():
    with pytest.raises(DGError):
        exterior_algebra(2, PrimeField(2))


def test_exterior_algebra_c3_validates():
    L = exterior_algebra(3, F101)
    assert L.dim == 8
    assert validate_algebra(L).ok


def test_antipode_fixes_top_class():
    L = exterior_algebra(2, F101)
    top = L.labels.index("e12")
    sig = L.hopf.antipode.a
    assert sig[top, top] == 1  # (-1)^2 on degree 2


def test_comultiplication_of_top_class():
    # Δ(e1e2) = e1e2⊗1 + e1⊗e2 - e2⊗e1 + 1⊗e1e2, frozen from the hand
    # expansion of (e1⊗1 + 1⊗e1)(e2⊗1 + 1⊗e2) with the Koszul sign rule
    L = exterior_algebra(2, F101)
    i1, ie1, ie2, ie12 = (L.labels.index(x) for x in ("1", "e1", "e2", "e12"))
    D = L.hopf.delta[ie12]
    expected = F101.zeros((4, 4))
    expected[ie12, i1] = 1
    expected[ie1, ie2] = 1
    expected[ie2, ie1] = 101 - 1
    expected[i1, ie12] = 1
    assert np.array_equal(D, expected)


def test_quotient_ring_basis_and_table():
    qr = QuotientRing(F101, ("x", "y"), ["x^2", "y^2"])
    assert qr.dim == 4
    assert qr.codimension == 2 and qr.embedding_dimension == 2
    assert validate_algebra(qr.algebra).ok
    # x*y nonzero, x^2 = 0
    x = qr.variable_vector(0)
    assert np.any(qr.algebra.multiply(x, qr.variable_vector(1)) != 0)
    assert not np.any(qr.algebra.multiply(x, x) != 0)


def test_quotient_ring_mixed_degrees():
    qr = QuotientRing(F101, ("x", "y"), ["x^2", "y^3"])
    assert qr.dim == 6
    assert validate_algebra(qr.algebra).ok


def test_quotient_ring_rejects_non_artinian():
    with pytest.raises(DGError):
        QuotientRing(F101, ("x", "y"), ["x^2", "x*y"])


def test_quotient_ring_rejects_linear_relation():
    with pytest.raises(DGError):
        QuotientRing(F101, ("x", "y"), ["x", "y^2"])


def test_quotient_ring_rejects_wrong_count():
    with pytest.raises(DGError):
        QuotientRing(F101, ("x", "y"), ["x^2"])


def test_koszul_on_one_variable():
    qr = QuotientRing(F101, ("x",), ["x^2"])
    K = koszul_complex(qr, ["x"])
    A = K.algebra
    assert A.dim == 4
    assert validate_algebra(A).ok
    # homology: H_0 = k, H_1 = k (the class of x·e)
    D = A.diff
    deg0 = [i for i, d in enumerate(A.degrees) if d == 0]
    deg1 = [i for i, d in enumerate(A.degrees) if d == 1]
    blk = F101.zeros((len(deg0), len(deg1)))
    for c, j in enumerate(deg1):
        for r, i in enumerate(deg0):
            blk[r, c] = D.a[i, j]
    from cihom.linalg import Matrix

    b = Matrix(F101, blk)
    # H_0 = R/(x): dim 2 - rank 1 = 1; H_1 = ker: dim 2 - rank 1 = 1
    assert b.rank() == 1


def test_koszul_of_field_is_field():
    qr = QuotientRing(F101, (), [])
    K = koszul_complex(qr, [])
    assert K.algebra.dim == 1
    assert validate_algebra(K.algebra).ok


def test_koszul_dimension_formula():
    qr = QuotientRing(F101, ("x", "y"), ["x^2", "y^2"])
    K = koszul_on_maximal_ideal(qr)
    assert K.algebra.dim == 16  # 4 · 2^2
    assert validate_algebra(K.algebra).ok


def test_koszul_mixed_ring_validates():
    qr = QuotientRing(F101, ("x", "y"), ["x^2", "y^3"])
    K = koszul_on_maximal_ideal(qr)
    assert K.algebra.dim == 24
    assert validate_algebra(K.algebra).ok


def test_koszul_rejects_unit_element():
    qr = QuotientRing(F101, ("x",), ["x^2"])
    with pytest.raises(DGError):
        koszul_complex(qr, ["1 + x"])


def test_rational_exterior_algebra():
    L = exterior_algebra(2, QQ)
    assert validate_algebra(L).ok
