"""epsilon-hermitian forms over (D, theta) with D a quaternion algebra with its
canonical involution or a quadratic etale algebra with conjugation.

The invariants e_n(h) are the e_n of the Jacobson trace form q_h(x) = h(x, x).
Every supported D has index at most 2, so these classes live over the base
field itself and no index reduction field is ever built.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import algebras as alg
from .algebras import QUAD_ETALE, QUATERNION, SPLIT, InvAlgebra
from .cohomology import CohClass, cup, h1_class, zero_class
from .errors import (
    AlgebraMismatch,
    ClassMismatch,
    Degenerate,
    DimensionMismatch,
    InvariantViolation,
    NotDivision,
    NotEven,
    UnsupportedAlgebra,
)
from .quadforms import (
    QuadForm,
    WittClassQ,
    e_n,
    invariant_bound,
    invariant_chain,
    is_hyperbolic,
    witt_class,
)


class HermForm:
    """h(x, y) = sum_ij theta(x_i) G_ij y_j on V = D^r (right D-module)."""

    __slots__ = ("algebra", "gram", "epsilon")

    def __init__(self, algebra: InvAlgebra, gram, epsilon: int = 1):
        if epsilon not in (1, -1):
            raise InvariantViolation("epsilon must be +1 or -1")
        G = tuple(tuple(algebra(x) for x in row) for row in gram)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "gram", G)
        object.__setattr__(self, "epsilon", epsilon)
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("HermForm is immutable")

    @classmethod
    def diagonal(cls, algebra: InvAlgebra, entries, epsilon: int = 1) -> "HermForm":
        r = len(entries)
        G = alg.mat_zeros(algebra, r)
        for i, x in enumerate(entries):
            G[i][i] = algebra(x)
        return cls(algebra, G, epsilon)

    def _validate(self):
        G = self.gram
        r = len(G)
        if any(len(row) != r for row in G):
            raise InvariantViolation("Gram matrix must be square")
        for i in range(r):
            for j in range(r):
                if G[j][i].conj() != G[i][j] * self.epsilon:
                    raise InvariantViolation(f"Gram entry ({i},{j}) breaks epsilon-hermitian symmetry")
        if self._diagonal():
            # a diagonal form is nondegenerate iff every entry is a unit
            if any(G[i][i].nrd().is_zero() for i in range(r)):
                raise Degenerate("hermitian form is degenerate")
        elif r and alg.mat_det_F(self.matrix()).is_zero():
            raise Degenerate("hermitian form is degenerate")

    def _diagonal(self) -> bool:
        G = self.gram
        return all(G[i][j].is_zero() for i in range(len(G)) for j in range(len(G)) if i != j)

    # -- data -----------------------------------------------------------------

    @property
    def field(self):
        return self.algebra.field

    @property
    def rank(self) -> int:
        """Number of coordinates r, so V = D^r."""
        return len(self.gram)

    @property
    def rk(self) -> int:
        """Rank in the sense of semisimple rank of V over D."""
        return alg.ssrk(self.algebra, self.algebra.dim * self.rank)

    def matrix(self):
        return [list(r) for r in self.gram]

    def h(self, x, y):
        A = self.algebra
        total = A.zero
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            cx = xi.conj()
            for j, yj in enumerate(y):
                g = self.gram[i][j]
                if not g.is_zero() and not yj.is_zero():
                    total = total + cx * g * yj
        return total

    def is_even(self) -> bool:
        """Diagonal entries lie in Symd(D, theta) = {u + theta(u)}."""
        A = self.algebra
        F = A.field
        char2 = F.kind == "GF" and F.p == 2
        if not char2:
            return True
        if A.kind == QUAD_ETALE:
            return True
        # split algebra with the identity: Symd = {u + u} = 0
        return all(self.gram[i][i].is_zero() for i in range(self.rank))

    def __eq__(self, other):
        if not isinstance(other, HermForm):
            return NotImplemented
        return self.algebra == other.algebra and self.epsilon == other.epsilon and self.gram == other.gram

    def __hash__(self):
        return hash((self.gram, self.epsilon))

    def __repr__(self):
        return f"HermForm({self.algebra!r}, eps={self.epsilon}, gram={[list(r) for r in self.gram]})"


def _same_space(h: HermForm, g: HermForm):
    if h.algebra != g.algebra or h.epsilon != g.epsilon:
        raise AlgebraMismatch("forms over different algebras or with different signs")


def orthogonal_sum(h: HermForm, g: HermForm) -> HermForm:
    _same_space(h, g)
    return HermForm(h.algebra, alg.block_diag(h.algebra, h.matrix(), g.matrix()), h.epsilon)


def negate(h: HermForm) -> HermForm:
    return HermForm(h.algebra, alg.mat_scale(h.matrix(), -1), h.epsilon)


def scale(h: HermForm, lam) -> HermForm:
    lam = h.field(lam)
    if lam.is_zero():
        raise Degenerate("scaling by zero")
    return HermForm(h.algebra, alg.mat_scale(h.matrix(), lam), h.epsilon)


def hyperbolic_form(A: InvAlgebra, planes: int = 1, epsilon: int = 1) -> HermForm:
    G = alg.mat_zeros(A, 2 * planes)
    for k in range(planes):
        G[2 * k][2 * k + 1] = A.one
        G[2 * k + 1][2 * k] = A.one * epsilon
    return HermForm(A, G, epsilon)


# ---------------------------------------------------------------------------
# Diagonalization over a division algebra
# ---------------------------------------------------------------------------


def _check_division(h: HermForm):
    A = h.algebra
    if A.kind == SPLIT or not A.is_division():
        raise NotDivision("diagonalization needs a division algebra; Morita-reduce first")


def diagonalize(h: HermForm) -> list:
    """Entries of a diagonal form congruent to h.

    Pivots are basis vectors with h(x, x) != 0, then vectors e_i + e_j u for u
    in the algebra basis; the other vectors are projected away from the pivot.
    """
    _check_division(h)
    A = h.algebra
    r = h.rank
    if h._diagonal():
        out = [h.gram[i][i] for i in range(r)]
        return [x.coords[0] for x in out] if all(x.is_scalar() for x in out) else out
    vecs = [[A.one if i == j else A.zero for j in range(r)] for i in range(r)]
    out = []
    while vecs:
        pivot = None
        for i, v in enumerate(vecs):
            if not h.h(v, v).is_zero():
                pivot = (i, v)
                break
        if pivot is None:
            for i in range(len(vecs)):
                for j in range(i + 1, len(vecs)):
                    for u in A.basis():
                        x = [a + b * u for a, b in zip(vecs[i], vecs[j])]
                        if not h.h(x, x).is_zero():
                            pivot = (i, x)
                            break
                    if pivot:
                        break
                if pivot:
                    break
        if pivot is None:
            raise Degenerate("form vanishes on the remaining subspace")
        i, x = pivot
        lam = h.h(x, x)
        lam_inv = lam.inv()
        rest = []
        for k, v in enumerate(vecs):
            if k == i:
                continue
            c = lam_inv * h.h(x, v)
            rest.append([vk - xk * c for vk, xk in zip(v, x)])
        out.append(lam)
        vecs = rest
    if all(lam.is_scalar() for lam in out):
        return [lam.coords[0] for lam in out]
    return out


# ---------------------------------------------------------------------------
# Jacobson trace form and invariants
# ---------------------------------------------------------------------------


def _check_trace_setting(h: HermForm):
    A = h.algebra
    if A.kind == SPLIT:
        raise UnsupportedAlgebra("trace forms are defined for quaternion or quadratic etale algebras")
    if h.epsilon != 1:
        raise UnsupportedAlgebra("skew-hermitian forms are handled as hermitian pairs")
    if not h.is_even():
        raise NotEven("hermitian form is not even")


def jacobson_trace(h: HermForm) -> QuadForm:
    """q_h(x) = h(x, x) on the F-vector space underlying V."""
    _check_trace_setting(h)
    A = h.algebra
    F = A.field
    # basis e_i u of V over F; h(e_i u, e_j v) = theta(u) G_ij v
    basis = [(i, u) for i in range(h.rank) for u in A.basis()]
    n = len(basis)
    C = [[F.zero] * n for _ in range(n)]
    for k, (i, u) in enumerate(basis):
        cu = u.conj()
        for m in range(k, n):
            j, v = basis[m]
            g = h.gram[i][j]
            if g.is_zero():
                continue
            val = cu * g * v
            C[k][m] = val.coords[0] if m == k else val.trd()
    q = QuadForm.from_upper(F, C)
    assert q.dim == 2 * A.index * h.rk, "trace form has the wrong dimension"
    return q


def _closed_formula(h: HermForm, n: int):
    """The closed expression for e_n(h) when one is available, else None."""
    A = h.algebra
    F = A.field
    if A.is_split():
        return zero_class(n, F)
    lams = diagonalize(h)
    r = len(lams)
    prod = F.one
    for lam in lams:
        prod = prod * lam
    sign_prod = prod * (-1 if (r // 2) % 2 else 1)
    if A.kind == QUATERNION:
        D = A.brauer_class()
        if n == 1:
            return zero_class(1, F)
        if n == 2:
            return D * r
        if n == 3 and r % 2 == 0:
            return cup(h1_class(sign_prod), D)
        return None
    c = A.h1_class()
    if n == 1:
        return c * r
    if n == 2 and r % 2 == 0:
        if F.kind == "GF":
            return zero_class(2, F)
        return cup(h1_class(sign_prod), c)
    return None


def e_n_hermitian(h: HermForm, n: int, check: bool = False) -> CohClass:
    """e_n(h) := e_n(q_h); with check=True the closed formulas are asserted."""
    value = e_n(jacobson_trace(h), n)
    if check:
        expected = _closed_formula(h, n)
        if expected is not None and expected != value:
            raise InvariantViolation(f"closed formula gives {expected} but the trace form gives {value}")
    return value


def invariants(h: HermForm, up_to: int = None, check: bool = False) -> list[CohClass]:
    q = jacobson_trace(h)
    chain = invariant_chain(q, up_to)
    if check:
        for n, value in enumerate(chain, start=1):
            expected = _closed_formula(h, n)
            if expected is not None and expected != value:
                raise InvariantViolation(f"closed formula for e_{n} disagrees with the trace form")
    return chain


def is_hyperbolic_hermitian(h: HermForm) -> bool:
    q = jacobson_trace(h)
    by_trace = is_hyperbolic(q)
    by_invariants = all(c.is_zero for c in invariant_chain(q, invariant_bound(q.dim)))
    assert by_trace == by_invariants, "hyperbolicity and e_n-vanishing disagree"
    return by_trace


# ---------------------------------------------------------------------------
# Witt classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WittClassH:
    algebra: InvAlgebra
    epsilon: int
    rank_parity: int
    trace_class: WittClassQ

    @property
    def is_zero(self) -> bool:
        return self.trace_class.is_zero


def witt_class_hermitian(h: HermForm) -> WittClassH:
    return WittClassH(h.algebra, h.epsilon, h.rank % 2, witt_class(jacobson_trace(h), False))


def equivalent_hermitian(h: HermForm, g: HermForm) -> bool:
    """Isometry, decided by the trace forms."""
    _same_space(h, g)
    if h.rank != g.rank:
        return False
    return witt_class_hermitian(h) == witt_class_hermitian(g)


def relative_e3(h: HermForm, g: HermForm, check: bool = False) -> CohClass:
    """e_3(h/g) := e_3(-g + h) for two forms on the same module."""
    _same_space(h, g)
    if h.rank != g.rank:
        raise DimensionMismatch("relative e_3 compares two forms on the same module")
    q = jacobson_trace(orthogonal_sum(negate(g), h))
    for n in (1, 2):
        if not e_n(q, n).is_zero:
            raise ClassMismatch(f"e_{n}(-g + h) does not vanish")
    value = e_n(q, 3)
    if check and h.algebra.kind == QUATERNION and not h.algebra.is_split():
        # rescaling h by lam moves e_3 by rk(h).(lam) u (D)
        lam = h.field(-1)
        moved = e_n(jacobson_trace(orthogonal_sum(negate(g), scale(h, lam))), 3)
        expected = value + cup(h1_class(lam), h.algebra.brauer_class()) * h.rank
        if moved != expected:
            raise InvariantViolation("scaling law for the relative e_3 fails")
    return value
