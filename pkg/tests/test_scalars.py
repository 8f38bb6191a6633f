from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cohinv.errors import DivisionByZero, InvariantViolation, WrongCharacteristic
from cohinv.scalars import (
    GF,
    QQ,
    absolute_trace,
    artin_schreier_class,
    hilbert_symbol,
    is_local_square,
    square_class,
    squarefree_rational,
)


def test_rational_arithmetic():
    assert QQ("2/3") + QQ("1/6") == QQ("5/6")
    assert QQ(3) / QQ(4) == Fraction(3, 4)
    with pytest.raises(DivisionByZero):
        QQ(0).inv()


def test_f9_reduction():
    F9 = GF(3, 2)
    assert F9.modulus == (1, 0, 1)  # t^2 + 1
    t = F9([0, 1])
    assert t * t == F9(-1)
    assert t * t == F9(2)


def test_default_moduli():
    assert GF(2, 2).modulus == (1, 1, 1)
    assert GF(2, 3).modulus == (1, 1, 0, 1)


def test_bad_fields():
    with pytest.raises(InvariantViolation):
        GF(4)
    with pytest.raises(InvariantViolation):
        GF(3, 2, [2, 0, 1])  # t^2 + 2 = (t-1)(t+1) over F_3


def test_finite_field_inverse_all():
    for F in (GF(7), GF(2, 3), GF(3, 2)):
        for x in F.elements():
            if not x.is_zero():
                assert x * x.inv() == F.one


def test_square_classes():
    assert square_class(QQ(18)) == 2
    assert square_class(QQ("-4/9")) == -1
    assert square_class(GF(7)(3)) == 1
    assert {square_class(GF(7)(a)) for a in (1, 2, 4)} == {0}
    with pytest.raises(WrongCharacteristic):
        square_class(GF(2)(1))


def test_artin_schreier():
    F2 = GF(2)
    assert artin_schreier_class(F2(0)) == 0
    assert artin_schreier_class(F2(1)) == 1
    F4 = GF(2, 2)
    wp = {(x * x - x).value for x in F4.elements()}
    for c in F4.elements():
        assert artin_schreier_class(c) == (0 if c.value in wp else 1)
        if absolute_trace(c) == 0:
            assert artin_schreier_class(c) == 0


def test_hilbert_examples():
    assert hilbert_symbol(-1, -1, "inf") == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    for b in (2, -3, "5/7", 11):
        for v in (2, 3, 5, 7, "inf"):
            assert hilbert_symbol(1, b, v) == 1


def test_local_squares():
    assert is_local_square(17, 2)
    assert not is_local_square(5, 2)
    assert is_local_square(2, 7)
    assert not is_local_square(-1, "inf")


nonzero = st.integers(-500, 500).filter(lambda n: n != 0)


@settings(max_examples=200, deadline=None)
@given(nonzero, nonzero, st.sampled_from([2, 3, 5, 7, 11, 13, "inf"]))
def test_hilbert_bilinear_symmetric(a, b, v):
    assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
    assert hilbert_symbol(a, -a, v) == 1
    assert hilbert_symbol(a, a * a * b, v) == hilbert_symbol(a, b, v)


@settings(max_examples=200, deadline=None)
@given(nonzero, nonzero, nonzero, st.sampled_from([2, 3, 5, "inf"]))
def test_hilbert_multiplicative(a, b, c, v):
    assert hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v)


@settings(max_examples=100, deadline=None)
@given(nonzero, st.integers(1, 50))
def test_squarefree_invariant_under_squares(n, k):
    assert squarefree_rational(n * k * k) == squarefree_rational(n)
    assert squarefree_rational(Fraction(n, k * k)) == squarefree_rational(n)
