import pytest
from hypothesis import given, settings, strategies as st

from cohinv.cohomology import (
    brauer_class_of_quaternion,
    cup,
    h1_class,
    ramification_set,
    symbol,
    zero_class,
)
from cohinv.errors import FieldMismatch, UnsupportedDegreeCombination
from cohinv.scalars import GF, QQ


def test_minus_one_cup_minus_one():
    c = cup(h1_class(QQ(-1)), h1_class(QQ(-1)))
    assert c.degree == 2
    assert c.places() == [2, "inf"]


def test_split_symbol_is_zero():
    for b in (2, 3, -7):
        assert cup(h1_class(QQ(1)), h1_class(QQ(b))).is_zero


def test_triple_minus_one():
    c = symbol(QQ(-1), QQ(-1), QQ(-1))
    assert c.degree == 3
    assert c.payload == 1


def test_brauer_classes():
    assert brauer_class_of_quaternion(QQ(-1), QQ(-1)).places() == [2, "inf"]
    assert brauer_class_of_quaternion(QQ(1), QQ(5)).is_zero
    F7 = GF(7)
    assert brauer_class_of_quaternion(F7(3), F7(5)).is_zero


def test_group_law_degree_one():
    a, b = h1_class(QQ(6)), h1_class(QQ(10))
    assert (a + b).payload == 15
    assert (a + a).is_zero
    assert (a * 3) == a
    assert (a * 2).is_zero


def test_mismatches():
    with pytest.raises(FieldMismatch):
        h1_class(QQ(2)) + zero_class(1, GF(3))
    F2 = GF(2)
    from cohinv.cohomology import as_class

    with pytest.raises(UnsupportedDegreeCombination):
        cup(as_class(F2(1)), as_class(F2(1)))


nonzero = st.integers(-300, 300).filter(lambda n: n != 0)


@settings(max_examples=300, deadline=None)
@given(nonzero, nonzero)
def test_ramification_even(a, b):
    assert len(ramification_set(a, b)) % 2 == 0


@settings(max_examples=100, deadline=None)
@given(nonzero, nonzero, nonzero)
def test_cup_bilinear(a, b, c):
    x, y, z = h1_class(QQ(a)), h1_class(QQ(b)), h1_class(QQ(c))
    assert cup(x, y + z) == cup(x, y) + cup(x, z)
    assert cup(x, y) == cup(y, x)
