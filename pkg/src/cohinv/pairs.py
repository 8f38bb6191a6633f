"""Hermitian pairs (h, l): a nondegenerate even form h over (D, theta) of the
first kind together with a semi-trace element l with l + sigma(l) = 1, where
sigma = ad_h is the adjoint involution.  The semi-trace is f(s) = Trd(l s).

Supported settings: D = F with the identity (symmetric bilinear b, alternating
in characteristic 2), and quaternion D with the canonical involution and
skew-hermitian h (characteristic != 2).
"""

from __future__ import annotations

from . import algebras as alg
from . import linalg
from .algebras import QUAD_ETALE, QUATERNION, SPLIT
from .cohomology import CohClass, h1_class
from .errors import (
    AlgebraMismatch,
    InvariantViolation,
    NotAlternatingChar2,
    NotSkewHermitian,
    NotSplit,
    OddRankTimesIndex,
    SplitAlgebra,
    UnsupportedAlgebra,
)
from .hermitian import HermForm
from .hermitian import negate as negate_form
from .hermitian import orthogonal_sum as form_sum
from .quadforms import (
    QuadForm,
    clifford_invariant,
    e_n,
    invariant_bound,
    invariant_chain,
    is_hyperbolic,
    is_isotropic,
)
from .scalars import absolute_trace


def _char2(F) -> bool:
    return F.kind == "GF" and F.p == 2


def adjoint(h: HermForm, X):
    """sigma(X) = G^-1 theta(X)^T G, the adjoint of X with respect to h."""
    G = h.matrix()
    return alg.mat_mul(alg.mat_mul(alg.mat_inverse(G), alg.mat_conj_transpose(X)), G)


class HermPair:
    __slots__ = ("h", "l")

    def __init__(self, h: HermForm, l=None):
        A = h.algebra
        F = A.field
        if A.kind == QUAD_ETALE:
            raise UnsupportedAlgebra("hermitian pairs need an involution of the first kind")
        if A.kind == QUATERNION and h.epsilon != -1:
            raise NotSkewHermitian("over a quaternion algebra the pair needs a skew-hermitian form")
        if A.kind == SPLIT and not _char2(F) and h.epsilon != 1:
            raise InvariantViolation("over the base field the pair needs a symmetric bilinear form")
        if A.kind == SPLIT and _char2(F) and not h.is_even():
            raise NotAlternatingChar2("in characteristic 2 the bilinear form must be alternating")
        r = h.rank
        if l is None:
            if _char2(F):
                raise InvariantViolation("characteristic 2 pairs need an explicit semi-trace element")
            # 1/2 is central and fixed by sigma, so l + sigma(l) = 1 holds
            l = alg.mat_scale(alg.mat_identity(A, r), F(2).inv())
        else:
            l = [[A(x) for x in row] for row in l]
            if len(l) != r or any(len(row) != r for row in l):
                raise InvariantViolation("semi-trace element has the wrong shape")
            total = alg.mat_add(l, adjoint(h, l))
            if not alg.mat_equal(total, alg.mat_identity(A, r)):
                raise InvariantViolation("l + sigma(l) != 1")
        if not _char2(F):
            # the semi-trace is forced to be Trd / 2
            l = alg.mat_scale(alg.mat_identity(A, r), F(2).inv())
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "l", tuple(tuple(row) for row in l))

    def __setattr__(self, name, value):
        raise AttributeError("HermPair is immutable")

    @property
    def algebra(self):
        return self.h.algebra

    @property
    def field(self):
        return self.h.field

    @property
    def rk(self) -> int:
        return self.h.rk

    def l_matrix(self):
        return [list(r) for r in self.l]

    def __eq__(self, other):
        if not isinstance(other, HermPair):
            return NotImplemented
        return self.h == other.h and self.l == other.l

    def __hash__(self):
        return hash((self.h, self.l))

    def __repr__(self):
        return f"HermPair({self.h!r}, l={self.l_matrix()})"


def pair_sum(p1: HermPair, p2: HermPair) -> HermPair:
    if p1.algebra != p2.algebra or p1.h.epsilon != p2.h.epsilon:
        raise AlgebraMismatch("pairs over different algebras")
    A = p1.algebra
    return HermPair(form_sum(p1.h, p2.h), alg.block_diag(A, p1.l_matrix(), p2.l_matrix()))


def negate_pair(p: HermPair) -> HermPair:
    return HermPair(negate_form(p.h), p.l_matrix())


def split_bilinear_pair(F, B, l=None) -> HermPair:
    """Pair over (F, id) from a symmetric (alternating in char 2) matrix."""
    A = alg.split_algebra(F)
    return HermPair(HermForm(A, [[A(x) for x in row] for row in B], 1), l)


# ---------------------------------------------------------------------------
# Split case
# ---------------------------------------------------------------------------


def _scalar_matrix(X):
    return [[x.coords[0] for x in row] for row in X]


def associated_quadratic_form(p: HermPair) -> QuadForm:
    """q(v) = f(phi_b(v (x) v)) = Trd(l v v^T B) = v^T (B l) v."""
    if p.algebra.kind != SPLIT:
        raise NotSplit("the associated quadratic form is defined for D = F")
    F = p.field
    B = _scalar_matrix(p.h.matrix())
    L = _scalar_matrix(p.l_matrix())
    M = linalg.matmul(B, L)
    n = len(M)
    C = [[F.zero] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = M[i][i]
        for j in range(i + 1, n):
            C[i][j] = M[i][j] + M[j][i]
    return QuadForm.from_upper(F, C)


def split_model(p: HermPair) -> HermPair:
    """Transport a pair over a split quaternion algebra to (F, id).

    With psi: D -> M_2(F) the canonical involution becomes ad_J for the
    alternating J = [[0, 1], [-1, 0]], and the Morita transport of a
    skew-hermitian G is the symmetric block matrix (J psi(G_ij))."""
    A = p.algebra
    if A.kind == SPLIT:
        return p
    if A.kind != QUATERNION or not A.is_split():
        raise NotSplit("only split quaternion algebras have a split model")
    F = A.field
    S = alg.split_quaternion(A)
    J = [[F.zero, F.one], [-F.one, F.zero]]
    G = p.h.matrix()
    r = len(G)
    B = linalg.zeros(F, 2 * r)
    for i in range(r):
        for j in range(r):
            blk = linalg.matmul(J, S(G[i][j]))
            for a in range(2):
                for b in range(2):
                    B[2 * i + a][2 * j + b] = blk[a][b]
    return split_bilinear_pair(F, B)


def _srd(L, F):
    """Second coefficient of the characteristic polynomial: sum of principal
    2x2 minors."""
    n = len(L)
    total = F.zero
    for i in range(n):
        for j in range(i + 1, n):
            total = total + L[i][i] * L[j][j] - L[i][j] * L[j][i]
    return total


def discriminant(p: HermPair) -> CohClass:
    """disc of the pair in the split case, computed from (b, l) directly."""
    sp = split_model(p)
    F = sp.field
    B = _scalar_matrix(sp.h.matrix())
    d = len(B)
    if d % 2:
        raise OddRankTimesIndex("discriminant needs even degree")
    m = d // 2
    if _char2(F):
        L = _scalar_matrix(sp.l_matrix())
        return CohClass(1, F, absolute_trace(_srd(L, F) + F(m * (m - 1) // 2)))
    return h1_class(linalg.det(B, F) * (-1 if m % 2 else 1))


def _check_rank(p: HermPair):
    if (p.rk * p.algebra.index) % 2:
        raise OddRankTimesIndex("rk(p) ind(D) must be even")


def quaternionic_pair_e1(p) -> CohClass:
    """(-1)^m Nrd(G) for a skew-hermitian G of rank m over a quaternion algebra."""
    h = p.h if isinstance(p, HermPair) else p
    A = h.algebra
    if A.kind != QUATERNION:
        raise UnsupportedAlgebra("quaternionic e_1 needs a quaternion algebra")
    if h.epsilon != -1:
        raise NotSkewHermitian("the Gram matrix must be skew-hermitian")
    if A.is_split():
        raise SplitAlgebra("use the split model for split algebras")
    return skew_unit_class(h)


def skew_unit_class(h: HermForm) -> CohClass:
    """The class (-1)^m Nrd(G) of a skew-hermitian quaternionic Gram matrix."""
    G = h.matrix()
    m = h.rank
    n = alg.mat_nrd(G)
    assert n * n == alg.mat_det_F(G), "Nrd^2 differs from the regular-representation determinant"
    return h1_class(n * (-1 if m % 2 else 1))


def e_n_pair(p: HermPair, n: int, check: bool = False) -> CohClass:
    _check_rank(p)
    A = p.algebra
    if A.kind == QUATERNION and not A.is_split():
        if n == 1:
            return quaternionic_pair_e1(p)
        raise UnsupportedAlgebra("e_n for n >= 2 of pairs over a non-split quaternion algebra is out of scope")
    sp = split_model(p)
    q = associated_quadratic_form(sp)
    value = e_n(q, n)
    if check:
        if n == 1 and discriminant(sp) != value:
            raise InvariantViolation("e_1 differs from the discriminant")
        if n == 2 and not q.char2 and clifford_invariant(q) != value:
            raise InvariantViolation("e_2 differs from the Clifford invariant")
        if n == 1 and A.kind == QUATERNION and skew_unit_class(p.h) != value:
            raise InvariantViolation("e_1 differs from the skew-unit class")
    return value


def pair_invariants(p: HermPair, check: bool = False) -> list[CohClass]:
    _check_rank(p)
    A = p.algebra
    if A.kind == QUATERNION and not A.is_split():
        return [quaternionic_pair_e1(p)]
    q = associated_quadratic_form(split_model(p))
    chain = invariant_chain(q)
    if check:
        for k in range(1, min(len(chain), 2) + 1):
            e_n_pair(p, k, check=True)
    return chain


def is_hyperbolic_pair(p: HermPair) -> bool:
    _check_rank(p)
    A = p.algebra
    if A.kind == QUATERNION and not A.is_split():
        raise UnsupportedAlgebra("hyperbolicity of pairs over a non-split quaternion algebra is out of scope")
    q = associated_quadratic_form(split_model(p))
    by_form = is_hyperbolic(q)
    by_invariants = all(c.is_zero for c in invariant_chain(q, invariant_bound(q.dim)))
    assert by_form == by_invariants, "pair hyperbolicity routes disagree"
    return by_form


def is_isotropic_pair(p: HermPair) -> bool:
    A = p.algebra
    if A.kind == QUATERNION and not A.is_split():
        raise UnsupportedAlgebra("isotropy of pairs over a non-split quaternion algebra is out of scope")
    return is_isotropic(associated_quadratic_form(split_model(p)))
