import random

import pytest

from cohinv import hermitian as hm
from cohinv import quadforms as qf
from cohinv.algebras import nrd, quad_etale, quaternion, split_algebra
from cohinv.cohomology import cup, h1_class
from cohinv.errors import (
    AlgebraMismatch,
    ClassMismatch,
    Degenerate,
    DimensionMismatch,
    InvariantViolation,
    NotDivision,
    UnsupportedAlgebra,
)
from cohinv.hermitian import HermForm, e_n_hermitian, jacobson_trace
from cohinv.quadforms import QuadForm
from cohinv.scalars import QQ

H = quaternion(QQ, -1, -1)
D = H.brauer_class()
Qi = quad_etale(QQ, -1)


def test_diagonalize_examples():
    assert hm.diagonalize(HermForm.diagonal(H, [1, 3])) == [QQ(1), QQ(3)]
    assert hm.diagonalize(HermForm.diagonal(H, [5])) == [QQ(5)]
    j = H([0, 0, 1, 0])
    h = HermForm(H, [[H(0), j], [-j, H(0)]])
    lams = hm.diagonalize(h)
    assert len(lams) == 2
    assert qf.is_hyperbolic(jacobson_trace(h))
    assert qf.is_hyperbolic(jacobson_trace(HermForm.diagonal(H, lams)))
    with pytest.raises(NotDivision):
        hm.diagonalize(HermForm.diagonal(quaternion(QQ, 1, 1), [1]))


def test_trace_forms():
    assert jacobson_trace(HermForm.diagonal(H, [1])) == QuadForm.diagonal(QQ, [1, 1, 1, 1])
    assert jacobson_trace(HermForm.diagonal(Qi, [1])) == QuadForm.diagonal(QQ, [1, 1])
    assert qf.is_hyperbolic(jacobson_trace(hm.hyperbolic_form(H)))
    assert jacobson_trace(HermForm.diagonal(H, [1, 2])).dim == 8
    with pytest.raises(UnsupportedAlgebra):
        jacobson_trace(HermForm.diagonal(split_algebra(QQ), [1]))


def test_rank_two_e3():
    for mu in (7, -7, 3, 2, -1):
        h = HermForm.diagonal(H, [1, mu])
        assert e_n_hermitian(h, 1, check=True).is_zero
        assert e_n_hermitian(h, 2, check=True).is_zero
        e3 = e_n_hermitian(h, 3, check=True)
        assert e3 == cup(h1_class(QQ(-mu)), D)
    # mu = 7: -7 < 0 against the definite class gives the real-place bit 1
    assert e_n_hermitian(HermForm.diagonal(H, [1, 7]), 3).payload == 1


def test_unitary_formulas():
    for c in (-1, 2, -3, 5):
        A = quad_etale(QQ, c)
        h = HermForm.diagonal(A, [1, 3])
        assert e_n_hermitian(h, 1, check=True).is_zero
        assert e_n_hermitian(h, 2, check=True) == cup(h1_class(QQ(-3)), A.h1_class())
        assert e_n_hermitian(HermForm.diagonal(A, [2]), 1, check=True) == A.h1_class()


def test_hyperbolicity():
    h = HermForm.diagonal(H, [1, 3])
    assert hm.is_hyperbolic_hermitian(hm.orthogonal_sum(h, hm.negate(h)))
    assert not hm.is_hyperbolic_hermitian(HermForm.diagonal(H, [1]))
    split_etale = quad_etale(QQ, 1)
    for lam in (1, 2, -5):
        assert hm.is_hyperbolic_hermitian(HermForm.diagonal(split_etale, [lam]))


def test_witt_classes_and_equivalence():
    h = HermForm.diagonal(H, [1, 2])
    assert hm.witt_class_hermitian(hm.orthogonal_sum(h, hm.negate(h))).is_zero
    u = H([1, 1, 1, 0])
    assert hm.equivalent_hermitian(HermForm.diagonal(H, [1]), HermForm.diagonal(H, [nrd(u)]))
    assert not hm.equivalent_hermitian(HermForm.diagonal(H, [1]), HermForm.diagonal(H, [-1]))
    assert not hm.equivalent_hermitian(HermForm.diagonal(H, [1]), HermForm.diagonal(H, [1, 1]))
    with pytest.raises(AlgebraMismatch):
        hm.equivalent_hermitian(HermForm.diagonal(H, [1]), HermForm.diagonal(Qi, [1]))


def test_relative_e3():
    h = HermForm.diagonal(H, [1, 2])
    assert hm.relative_e3(h, h, check=True).is_zero
    for mu in (7, -7, 3):
        rel = hm.relative_e3(HermForm.diagonal(H, [1, mu]), HermForm.diagonal(H, [1, 1]), check=True)
        assert rel == cup(h1_class(QQ(-mu)), D) - cup(h1_class(QQ(-1)), D)
    with pytest.raises(DimensionMismatch):
        hm.relative_e3(HermForm.diagonal(H, [1]), HermForm.diagonal(H, [1, 1, 1]))
    # over Q(i) the discriminant of -g + h can be nonzero
    with pytest.raises(ClassMismatch):
        hm.relative_e3(HermForm.diagonal(Qi, [1]), HermForm.diagonal(Qi, [3]))


def test_relative_e3_scaling_even_rank():
    rng = random.Random(5)
    for _ in range(30):
        r = rng.choice([2, 4])
        h = HermForm.diagonal(H, [rng.choice([-1, 1]) * rng.randint(1, 20) for _ in range(r)])
        lam = rng.choice([-1, 1]) * rng.randint(1, 20)
        assert hm.relative_e3(hm.scale(h, lam), h, check=True).is_zero


def test_relative_e3_scaling_odd_rank_moves_by_lambda_cup_d():
    # e_3(-h + lam h) = rank(h).(lam) u (D); for odd rank this is (lam) u (D)
    h = HermForm.diagonal(H, [1])
    assert hm.relative_e3(hm.scale(h, -1), h, check=True) == cup(h1_class(QQ(-1)), D)
    assert not hm.relative_e3(hm.scale(h, -1), h).is_zero
    assert hm.relative_e3(hm.scale(h, 3), h).is_zero


def test_validation():
    with pytest.raises(InvariantViolation):
        HermForm(H, [[H(1), H(2)], [H(3), H(1)]])
    with pytest.raises(Degenerate):
        HermForm(H, [[H(1), H(1)], [H(1), H(1)]])
    with pytest.raises(InvariantViolation):
        HermForm(H, [[H([0, 1, 0, 0])]], 1)
    # i is skew-hermitian
    assert HermForm(H, [[H([0, 1, 0, 0])]], -1).rank == 1
