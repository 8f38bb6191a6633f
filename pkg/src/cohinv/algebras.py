"""Involutorial algebras of index at most 2: the base field with the identity,
quadratic etale algebras F_c with conjugation, and quaternion algebras (a, b)_F
with the canonical involution.  Matrices over them are plain lists of lists
of AlgElem.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional

from . import linalg
from .cohomology import as_class, brauer_class_of_quaternion
from .errors import (
    AlgebraMismatch,
    Degenerate,
    DimensionMismatch,
    InconsistentDimensions,
    UnsupportedAlgebra,
    WrongCharacteristic,
    ZeroElement,
)
from .scalars import FieldElem, artin_schreier_class, is_square

SPLIT = "split"
QUAD_ETALE = "quad_etale"
QUATERNION = "quaternion"


def _char2(F) -> bool:
    return F.kind == "GF" and F.p == 2


@dataclass(frozen=True)
class InvAlgebra:
    """(D, theta) with D in {F, F_c, (a, b)_F} and its standard involution."""

    field: object
    kind: str
    params: tuple = ()

    def __post_init__(self):
        F = self.field
        if self.kind == QUATERNION:
            if _char2(F):
                raise WrongCharacteristic("quaternion algebras over even fields are only used through M_2(F)")
            a, b = self.params
            if a.is_zero() or b.is_zero():
                raise ZeroElement("quaternion parameters must be nonzero")
        elif self.kind == QUAD_ETALE:
            (c,) = self.params
            if not _char2(F) and c.is_zero():
                raise ZeroElement("F[T]/(T^2 - c) needs c != 0")
        elif self.kind != SPLIT:
            raise UnsupportedAlgebra(f"unknown algebra kind {self.kind!r}")

    # -- shape ----------------------------------------------------------------

    @property
    def dim(self) -> int:
        return {SPLIT: 1, QUAD_ETALE: 2, QUATERNION: 4}[self.kind]

    @property
    def degree(self) -> int:
        """Degree over the center."""
        return 2 if self.kind == QUATERNION else 1

    @property
    def center_dim(self) -> int:
        return 2 if self.kind == QUAD_ETALE else 1

    @property
    def involution(self) -> str:
        return {SPLIT: "identity", QUAD_ETALE: "conjugation", QUATERNION: "canonical"}[self.kind]

    @property
    def involution_kind(self) -> int:
        """1 for involutions of the first kind, 2 for unitary ones."""
        return 2 if self.kind == QUAD_ETALE else 1

    def is_split(self) -> bool:
        F = self.field
        if self.kind == SPLIT:
            return True
        if self.kind == QUAD_ETALE:
            (c,) = self.params
            if _char2(F):
                return artin_schreier_class(c) == 0
            return is_square(c)
        a, b = self.params
        by_brauer = brauer_class_of_quaternion(a, b).is_zero
        from .quadforms import is_isotropic

        by_norm = is_isotropic(self.norm_form())
        assert by_brauer == by_norm, "Brauer-class and norm-form routes disagree"
        return by_brauer

    @property
    def index(self) -> int:
        return 2 if (self.kind == QUATERNION and not self.is_split()) else 1

    def is_division(self) -> bool:
        return self.kind == SPLIT or not self.is_split()

    def norm_form(self):
        from .quadforms import QuadForm, norm_form_etale

        F = self.field
        if self.kind == QUATERNION:
            a, b = self.params
            return QuadForm.diagonal(F, [F.one, -a, -b, a * b])
        if self.kind == QUAD_ETALE:
            return norm_form_etale(self.params[0])
        raise UnsupportedAlgebra("the split algebra has no norm form here")

    def h1_class(self):
        """(c] for a quadratic etale algebra."""
        if self.kind != QUAD_ETALE:
            raise UnsupportedAlgebra("only quadratic etale algebras define an H^1 class")
        return as_class(self.params[0])

    def brauer_class(self):
        F = self.field
        if self.kind == QUATERNION:
            return brauer_class_of_quaternion(*self.params)
        from .cohomology import zero_class

        return zero_class(2, F)

    # -- elements -------------------------------------------------------------

    def __call__(self, value) -> "AlgElem":
        if isinstance(value, AlgElem):
            if value.algebra != self:
                raise AlgebraMismatch("element of another algebra")
            return value
        F = self.field
        if isinstance(value, (list, tuple)):
            if len(value) != self.dim:
                raise DimensionMismatch(f"expected {self.dim} coordinates, got {len(value)}")
            return self.make([F(v) for v in value])
        coords = [F(value)] + [F.zero] * (self.dim - 1)
        return self.make(coords)

    def make(self, coords) -> "AlgElem":
        cls = QuatElem if self.kind == QUATERNION else AlgElem
        return cls(self, tuple(coords))

    @property
    def zero(self) -> "AlgElem":
        return self.make([self.field.zero] * self.dim)

    @property
    def one(self) -> "AlgElem":
        return self(1)

    def basis(self) -> list["AlgElem"]:
        F = self.field
        return [self.make([F.one if i == j else F.zero for j in range(self.dim)]) for i in range(self.dim)]

    def _mul(self, x, y):
        F = self.field
        if self.kind == SPLIT:
            return (x[0] * y[0],)
        if self.kind == QUAD_ETALE:
            (c,) = self.params
            x0, x1 = x
            y0, y1 = y
            if _char2(F):
                # T^2 = T + c
                return (x0 * y0 + c * x1 * y1, x0 * y1 + x1 * y0 + x1 * y1)
            return (x0 * y0 + c * x1 * y1, x0 * y1 + x1 * y0)
        a, b = self.params
        t1, x1, y1, z1 = x
        t2, x2, y2, z2 = y
        return (
            t1 * t2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2,
            t1 * x2 + x1 * t2 - b * y1 * z2 + b * z1 * y2,
            t1 * y2 + y1 * t2 + a * x1 * z2 - a * z1 * x2,
            t1 * z2 + z1 * t2 + x1 * y2 - y1 * x2,
        )

    def _conj(self, x):
        if self.kind == SPLIT:
            return x
        if self.kind == QUAD_ETALE:
            x0, x1 = x
            if _char2(self.field):
                return (x0 + x1, x1)
            return (x0, -x1)
        t, i, j, k = x
        return (t, -i, -j, -k)

    def __repr__(self):
        if self.kind == SPLIT:
            return f"Split({self.field!r})"
        if self.kind == QUAD_ETALE:
            return f"QuadEtale({self.field!r}, c={self.params[0]})"
        return f"Quaternion({self.field!r}, a={self.params[0]}, b={self.params[1]})"


def split_algebra(F) -> InvAlgebra:
    return InvAlgebra(F, SPLIT)


def quad_etale(F, c) -> InvAlgebra:
    return InvAlgebra(F, QUAD_ETALE, (F(c),))


def quaternion(F, a, b) -> InvAlgebra:
    return InvAlgebra(F, QUATERNION, (F(a), F(b)))


class AlgElem:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("algebra elements are immutable")

    def _coerce(self, other):
        if isinstance(other, AlgElem):
            if other.algebra != self.algebra:
                raise AlgebraMismatch("elements of different algebras")
            return other
        if isinstance(other, (int, Fraction, FieldElem)):
            return self.algebra(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.algebra.make([x + y for x, y in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return self.algebra.make([-x for x in self.coords])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            s = self.algebra.field(other)
            return self.algebra.make([s * x for x in self.coords])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.algebra.make(self.algebra._mul(self.coords, other.coords))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            return self * other
        return NotImplemented

    def conj(self) -> "AlgElem":
        return self.algebra.make(self.algebra._conj(self.coords))

    def trd(self) -> FieldElem:
        """Reduced trace (for F_c: the trace to F)."""
        if self.algebra.kind == SPLIT:
            return self.coords[0]
        return (self + self.conj()).coords[0]

    def nrd(self) -> FieldElem:
        """Reduced norm (for F_c: the norm to F)."""
        A = self.algebra
        if A.kind == SPLIT:
            return self.coords[0]
        return (self * self.conj()).coords[0]

    def inv(self) -> "AlgElem":
        n = self.nrd()
        if n.is_zero():
            raise ZeroElement(f"{self!r} is not invertible")
        return self.conj() * n.inv()

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.coords)

    def is_scalar(self) -> bool:
        return all(x.is_zero() for x in self.coords[1:])

    def __eq__(self, other):
        if isinstance(other, AlgElem):
            return self.algebra == other.algebra and self.coords == other.coords
        if isinstance(other, (int, Fraction, FieldElem)):
            return self == self.algebra(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        if self.algebra.kind == SPLIT:
            return repr(self.coords[0])
        return "(" + ", ".join(map(str, self.coords)) + ")"


class QuatElem(AlgElem):
    """Quaternion t + x i + y j + z ij."""

    __slots__ = ()

    @property
    def t(self):
        return self.coords[0]

    @property
    def x(self):
        return self.coords[1]

    @property
    def y(self):
        return self.coords[2]

    @property
    def z(self):
        return self.coords[3]


def quat_mul(x: AlgElem, y: AlgElem) -> AlgElem:
    return x * y


def quat_conj(x: AlgElem) -> AlgElem:
    return x.conj()


def nrd(x: AlgElem) -> FieldElem:
    return x.nrd()


def trd(x: AlgElem) -> FieldElem:
    return x.trd()


def ssrk(A: InvAlgebra, dim_V: int, matrix_size: int = 1) -> int:
    """Semisimple rank of a module of F-dimension dim_V over M_n(A):
    dim_K(V) / (deg * ind) with K the center."""
    if dim_V < 0 or matrix_size < 1:
        raise InconsistentDimensions("dimensions must be nonnegative")
    if dim_V % A.center_dim:
        raise InconsistentDimensions("dimension is not a multiple of the center dimension")
    dim_K = dim_V // A.center_dim
    deg = matrix_size * A.degree
    denom = deg * A.index
    if dim_K % denom:
        raise InconsistentDimensions(f"dim_K(V) = {dim_K} is not divisible by deg * ind = {denom}")
    if dim_K % (matrix_size * A.dim // A.center_dim):
        raise InconsistentDimensions("V is not a module over the matrix algebra")
    return dim_K // denom


# ---------------------------------------------------------------------------
# Matrices over an algebra
# ---------------------------------------------------------------------------


def mat(A: InvAlgebra, rows) -> list[list[AlgElem]]:
    return [[A(x) for x in row] for row in rows]


def mat_zeros(A, n, m=None):
    m = n if m is None else m
    return [[A.zero] * m for _ in range(n)]


def mat_identity(A, n):
    out = mat_zeros(A, n)
    for i in range(n):
        out[i][i] = A.one
    return out


def mat_mul(X, Y):
    if X and len(X[0]) != len(Y):
        raise DimensionMismatch("matrix shapes")
    n, m, k = len(X), len(Y[0]) if Y else 0, len(Y)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = X[i][0] * Y[0][j]
            for t in range(1, k):
                acc = acc + X[i][t] * Y[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_add(X, Y):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(X, Y)]


def mat_scale(X, c):
    return [[x * c for x in r] for r in X]


def mat_conj_transpose(X):
    """theta(X)^T."""
    return [[X[j][i].conj() for j in range(len(X))] for i in range(len(X[0]))] if X else []


def block_diag(A, *mats):
    n = sum(len(M) for M in mats)
    out = mat_zeros(A, n)
    off = 0
    for M in mats:
        for i, row in enumerate(M):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(M)
    return out


def left_regular(x: AlgElem):
    """F-matrix of y -> x y in the algebra basis."""
    A = x.algebra
    if x.is_scalar():
        c = x.coords[0]
        return [[c if i == j else A.field.zero for j in range(A.dim)] for i in range(A.dim)]
    cols = [(x * e).coords for e in x.algebra.basis()]
    return linalg.transpose([list(c) for c in cols])


def regular_rep(X):
    """F-matrix of the D-linear map v -> X v on D^m (column vectors)."""
    A = X[0][0].algebra
    d = A.dim
    n, m = len(X), len(X[0])
    out = linalg.zeros(A.field, n * d, m * d)
    for i in range(n):
        for j in range(m):
            L = left_regular(X[i][j])
            for r in range(d):
                for c in range(d):
                    out[i * d + r][j * d + c] = L[r][c]
    return out


def mat_det_F(X) -> FieldElem:
    """Determinant over F of the regular representation of X."""
    A = X[0][0].algebra
    return linalg.det(regular_rep(X), A.field)


def mat_inverse(X):
    A = X[0][0].algebra
    d = A.dim
    n = len(X)
    R = regular_rep(X)
    try:
        Rinv = linalg.inverse(R, A.field)
    except Degenerate:
        raise Degenerate("matrix over the algebra is singular") from None
    # column d*j of Rinv holds the coordinates of (X^-1)_{ij} * 1
    return [[A.make([Rinv[i * d + r][j * d] for r in range(d)]) for j in range(n)] for i in range(n)]


def mat_equal(X, Y) -> bool:
    return len(X) == len(Y) and all(x == y for r, s in zip(X, Y) for x, y in zip(r, s))


# ---------------------------------------------------------------------------
# Explicit splitting of split quaternion algebras
# ---------------------------------------------------------------------------


def _rational_sqrt(v) -> Optional[Fraction]:
    v = Fraction(v)
    if v < 0:
        return None
    n, d = v.numerator, v.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _sqrt(a: FieldElem) -> Optional[FieldElem]:
    F = a.field
    if F.kind == "Q":
        r = _rational_sqrt(a.value)
        return None if r is None else F(r)
    for x in F.elements():
        if x * x == a:
            return x
    return None


def zero_norm_element(A: InvAlgebra, height: int = 300) -> QuatElem:
    """A nonzero w with Nrd(w) = 0 in a split quaternion algebra."""
    F = A.field
    a, b = A.params
    s = _sqrt(a)
    if s is not None:
        return A.make([s, -F.one, F.zero, F.zero])
    s = _sqrt(b)
    if s is not None:
        return A.make([s, F.zero, -F.one, F.zero])
    if F.kind == "GF":
        for x in F.elements():
            for y in F.elements():
                t = _sqrt(a * x * x + b * y * y)
                if t is not None and not (x.is_zero() and y.is_zero()):
                    return A.make([t, x, y, F.zero])
        raise UnsupportedAlgebra("no zero-norm element found")
    if not A.is_split():
        raise UnsupportedAlgebra("algebra is not split")
    for h in range(1, height + 1):
        for x in range(0, h + 1):
            for y in (h,) if x < h else range(0, h + 1):
                for xs, ys in ((x, y), (y, x)):
                    t = _rational_sqrt((a * xs * xs + b * ys * ys).value)
                    if t is not None and (xs or ys):
                        return A.make([F(t), F(xs), F(ys), F.zero])
    raise UnsupportedAlgebra("no zero-norm element within the search height")


@dataclass(frozen=True)
class Splitting:
    """An F-algebra isomorphism psi: (a, b)_F -> M_2(F), x -> matrix of left
    multiplication on the left ideal A w.  Under psi the canonical involution
    becomes the adjugate."""

    algebra: InvAlgebra
    ideal_basis: tuple

    def __call__(self, x: AlgElem):
        F = self.algebra.field
        w1, w2 = self.ideal_basis
        B = linalg.transpose([list(w1.coords), list(w2.coords)])  # 4 x 2
        out = []
        for w in (x * w1, x * w2):
            # solve B c = w
            aug = [row + [v] for row, v in zip(B, w.coords)]
            R, piv, _ = linalg._echelon(aug, F)
            if 2 in piv:
                raise AssertionError("left ideal is not stable")
            c = [R[k][2] for k in range(2)]
            out.append(c)
        return linalg.transpose(out)

    def inverse(self, M) -> AlgElem:
        A = self.algebra
        F = A.field
        imgs = [self(e) for e in A.basis()]
        # solve sum c_k imgs[k] = M as a 4x4 system
        rows = []
        for r in range(2):
            for c in range(2):
                rows.append([img[r][c] for img in imgs] + [F(M[r][c])])
        R, piv, _ = linalg._echelon(rows, F)
        if 4 in piv:
            raise AssertionError("splitting is not surjective")
        return A.make([R[k][4] for k in range(4)])


def split_quaternion(A: InvAlgebra) -> Splitting:
    if A.kind != QUATERNION:
        raise UnsupportedAlgebra("only quaternion algebras are split explicitly")
    w = zero_norm_element(A)
    F = A.field
    basis = [w]
    for e in A.basis()[1:]:
        cand = e * w
        M = [list(basis[0].coords), list(cand.coords)]
        if linalg.rank(M, F) == 2:
            basis.append(cand)
            break
    return Splitting(A, tuple(basis))


def mat_nrd(X) -> FieldElem:
    """Reduced norm of a square matrix over a quaternion algebra.

    Division algebras use Gaussian elimination (row swaps have reduced norm 1,
    so Nrd is the product of the pivot norms); split ones use the determinant
    of the image under an explicit splitting.
    """
    A = X[0][0].algebra
    F = A.field
    if A.kind != QUATERNION:
        raise UnsupportedAlgebra("reduced norms of matrices are only needed over quaternions")
    n = len(X)
    if A.is_split():
        S = split_quaternion(A)
        big = linalg.zeros(F, 2 * n)
        for i in range(n):
            for j in range(n):
                M = S(X[i][j])
                for r in range(2):
                    for c in range(2):
                        big[2 * i + r][2 * j + c] = M[r][c]
        return linalg.det(big, F)
    M = [list(r) for r in X]
    result = F.one
    for col in range(n):
        piv = next((k for k in range(col, n) if not M[k][col].is_zero()), None)
        if piv is None:
            return F.zero
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        result = result * p.nrd()
        p_inv = p.inv()
        for k in range(col + 1, n):
            if not M[k][col].is_zero():
                c = M[k][col] * p_inv
                M[k] = [x - c * y for x, y in zip(M[k], M[col])]
    return result
