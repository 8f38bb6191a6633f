import random

import pytest

from cohinv import algebras as alg
from cohinv import linalg
from cohinv import quadforms as qf
from cohinv.algebras import nrd, quad_etale, quaternion, split_algebra, ssrk, trd
from cohinv.errors import InconsistentDimensions, WrongCharacteristic, ZeroElement
from cohinv.scalars import GF, QQ

H = quaternion(QQ, -1, -1)
I, J, K = H([0, 1, 0, 0]), H([0, 0, 1, 0]), H([0, 0, 0, 1])


def test_basis_table():
    assert I * J == K
    assert J * I == -K
    assert I * I == H(-1)
    assert nrd(H([1, 1, 0, 0])) == QQ(2)
    assert trd(I) == QQ(0)
    assert trd(H([3, 1, 1, 1])) == QQ(6)


def test_quat_mul_associative():
    A = quaternion(QQ, 2, -5)
    rng = random.Random(0)
    for _ in range(30):
        x, y, z = (A([rng.randint(-4, 4) for _ in range(4)]) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert nrd(x * y) == nrd(x) * nrd(y)
        assert (x * y).conj() == y.conj() * x.conj()
        if not x.is_zero():
            assert x * x.inv() == A.one


def test_is_split():
    assert not H.is_split()
    assert quaternion(QQ, 1, 7).is_split()
    assert quaternion(QQ, 5, -5).is_split()
    assert not quad_etale(QQ, -1).is_split()
    assert quad_etale(QQ, 4).is_split()
    # every quaternion algebra over a finite field splits
    assert quaternion(GF(7), 3, 5).is_split()


def test_norm_forms():
    assert H.norm_form() == qf.QuadForm.diagonal(QQ, [1, 1, 1, 1])
    assert quad_etale(QQ, -1).norm_form() == qf.QuadForm.diagonal(QQ, [1, 1])
    assert qf.is_hyperbolic(quaternion(QQ, 1, 3).norm_form())


def test_char2_quaternion_rejected():
    with pytest.raises(WrongCharacteristic):
        quaternion(GF(2), 1, 1)
    with pytest.raises(ZeroElement):
        quaternion(QQ, 0, 1)


def test_quad_etale_char2():
    F4 = GF(2, 2)
    A = quad_etale(F4, F4([0, 1]))
    T = A([0, 1])
    assert T * T == T + A(F4([0, 1]))
    assert T.conj() == T + A.one
    assert not A.is_split()  # tr(w) = 1 on F_4


def test_ssrk():
    assert ssrk(H, 4) == 1
    assert ssrk(H, 8) == 2
    assert ssrk(quad_etale(QQ, -1), 6) == 3
    assert ssrk(split_algebra(QQ), 5) == 5
    assert ssrk(quaternion(QQ, 1, 1), 4) == 2
    assert ssrk(H, 16, matrix_size=2) == 2
    with pytest.raises(InconsistentDimensions):
        ssrk(H, 6)


def test_splitting_is_homomorphism():
    for A in (quaternion(QQ, 1, 3), quaternion(QQ, 5, -5), quaternion(GF(7), 3, 5), quaternion(QQ, 2, 7)):
        if not A.is_split():
            continue
        S = alg.split_quaternion(A)
        F = A.field
        rng = random.Random(1)
        for _ in range(10):
            x = A([rng.randint(-3, 3) for _ in range(4)])
            y = A([rng.randint(-3, 3) for _ in range(4)])
            assert S(x * y) == linalg.matmul(S(x), S(y))
            assert linalg.det(S(x), F) == nrd(x)
            # the canonical involution becomes the adjugate
            M = S(x)
            adj = [[M[1][1], -M[0][1]], [-M[1][0], M[0][0]]]
            assert S(x.conj()) == adj
            assert S.inverse(S(x)) == x


def test_matrix_reduced_norm():
    X = [[H(1), I], [J, H(2)]]
    n = alg.mat_nrd(X)
    assert n * n == alg.mat_det_F(X)
    A = quaternion(QQ, 1, 3)
    Y = [[A([1, 2, 0, 1]), A(1)], [A(0), A([0, 1, 1, 0])]]
    assert alg.mat_nrd(Y) ** 2 == alg.mat_det_F(Y)
