"""Nondegenerate quadratic forms over Q and F_q, their cohomological
invariants e_1, e_2, e_3, ..., Witt decomposition and isotropy deciders.

Outside characteristic 2 a form is stored diagonally, q = <a_1, ..., a_d>
meaning q(x) = sum a_i x_i^2.  In characteristic 2 it is stored as an
upper-triangular coefficient matrix C with q(x) = x^T C x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from . import linalg
from .cohomology import CohClass, as_class, h1_class, ramification_set, zero_class
from .errors import (
    Degenerate,
    DimensionMismatch,
    OddDimension,
    PreviousInvariantNonzero,
    RouteMismatch,
    WrongCharacteristic,
    ZeroSlot,
)
from .scalars import (
    INFINITY,
    FieldElem,
    absolute_trace,
    bad_primes,
    hilbert_symbol,
    is_local_square,
    is_square,
    mul_square_classes,
    squarefree_rational,
)


def _is_char2(F) -> bool:
    return F.kind == "GF" and F.p == 2


class QuadForm:
    __slots__ = ("field", "diag", "upper")

    def __init__(self, field, diag=None, upper=None, _checked=False):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "diag", None if diag is None else tuple(diag))
        object.__setattr__(self, "upper", None if upper is None else tuple(tuple(r) for r in upper))
        if not _checked:
            self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("QuadForm is immutable")

    # -- construction ---------------------------------------------------------

    @classmethod
    def diagonal(cls, F, entries) -> "QuadForm":
        if _is_char2(F):
            n = len(entries)
            C = linalg.zeros(F, n)
            for i, a in enumerate(entries):
                C[i][i] = F(a)
            return cls(F, upper=C)
        return cls(F, diag=[F(a) for a in entries])

    @classmethod
    def from_upper(cls, F, C) -> "QuadForm":
        """q(x) = sum_{i <= j} C[i][j] x_i x_j; entries below the diagonal are
        folded onto the upper triangle."""
        n = len(C)
        U = linalg.zeros(F, n)
        for i in range(n):
            for j in range(n):
                if i <= j:
                    U[i][j] = U[i][j] + F(C[i][j])
                else:
                    U[j][i] = U[j][i] + F(C[i][j])
        if _is_char2(F):
            return cls(F, upper=U)
        half = F(2).inv()
        S = [[U[i][j] if i == j else (U[min(i, j)][max(i, j)] * half) for j in range(n)] for i in range(n)]
        return cls.from_gram(F, S)

    @classmethod
    def from_gram(cls, F, S) -> "QuadForm":
        """q(x) = x^T S x for symmetric S (char != 2)."""
        if _is_char2(F):
            raise WrongCharacteristic("use from_upper in characteristic 2")
        S = [[F(x) for x in row] for row in S]
        diag, _ = linalg.diagonalize_symmetric(S, F)
        return cls(F, diag=diag)

    def _validate(self):
        F = self.field
        if _is_char2(F):
            if self.upper is None:
                raise Degenerate("characteristic 2 forms need a coefficient matrix")
            n = len(self.upper)
            for i in range(n):
                for j in range(i):
                    if not self.upper[i][j].is_zero():
                        raise Degenerate("coefficient matrix must be upper triangular")
            B = self.polar_matrix()
            if n % 2 == 0:
                if n and linalg.det(B, F).is_zero():
                    raise Degenerate("polar form is degenerate")
            else:
                rad = linalg.nullspace(B, F)
                if len(rad) != 1 or self.evaluate(rad[0]).is_zero():
                    raise Degenerate("odd-dimensional form needs a 1-dim anisotropic radical")
        else:
            if self.diag is None:
                raise Degenerate("missing diagonal")
            for a in self.diag:
                if a.field != F:
                    raise Degenerate("entry from another field")
                if a.is_zero():
                    raise Degenerate("zero diagonal entry")

    # -- basic data -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.diag) if self.diag is not None else len(self.upper)

    @property
    def char2(self) -> bool:
        return self.upper is not None

    def coefficient_matrix(self):
        """Upper-triangular C with q(x) = x^T C x."""
        if self.char2:
            return [list(r) for r in self.upper]
        F = self.field
        C = linalg.zeros(F, self.dim)
        for i, a in enumerate(self.diag):
            C[i][i] = a
        return C

    def polar_matrix(self):
        """Gram matrix of b_q(x, y) = q(x + y) - q(x) - q(y)."""
        C = self.coefficient_matrix()
        n = len(C)
        return [[C[i][j] + C[j][i] for j in range(n)] for i in range(n)]

    def evaluate(self, x) -> FieldElem:
        F = self.field
        x = [F(v) for v in x]
        total = F.zero
        if self.char2:
            n = len(self.upper)
            for i in range(n):
                if x[i].is_zero():
                    continue
                for j in range(i, n):
                    c = self.upper[i][j]
                    if not c.is_zero():
                        total = total + c * x[i] * x[j]
            return total
        for a, v in zip(self.diag, x):
            total = total + a * v * v
        return total

    def polar(self, x, y) -> FieldElem:
        return self.evaluate([a + b for a, b in zip(x, y)]) - self.evaluate(x) - self.evaluate(y)

    def perp(self, other: "QuadForm") -> "QuadForm":
        if other.field != self.field:
            raise DimensionMismatch("forms over different fields")
        if self.char2:
            n, m = self.dim, other.dim
            F = self.field
            C = linalg.zeros(F, n + m)
            for i in range(n):
                for j in range(n):
                    C[i][j] = self.upper[i][j]
            for i in range(m):
                for j in range(m):
                    C[n + i][n + j] = other.upper[i][j]
            return QuadForm(F, upper=C, _checked=True)
        return QuadForm(self.field, diag=self.diag + other.diag, _checked=True)

    def scale(self, c) -> "QuadForm":
        c = self.field(c)
        if c.is_zero():
            raise Degenerate("scaling by zero")
        if self.char2:
            return QuadForm(self.field, upper=[[c * x for x in r] for r in self.upper], _checked=True)
        return QuadForm(self.field, diag=[c * a for a in self.diag], _checked=True)

    def __neg__(self):
        return self.scale(-1)

    def determinant(self) -> FieldElem:
        if self.char2:
            raise WrongCharacteristic("determinant of a char 2 form")
        d = self.field.one
        for a in self.diag:
            d = d * a
        return d

    def signed_discriminant(self) -> FieldElem:
        d = self.dim
        sign = -1 if (d * (d - 1) // 2) % 2 else 1
        return self.determinant() * sign

    def signature(self) -> int:
        if self.field.kind != "Q":
            raise WrongCharacteristic("signature needs an ordered field")
        return sum(1 if a.value > 0 else -1 for a in self.diag)

    def __eq__(self, other):
        if not isinstance(other, QuadForm):
            return NotImplemented
        return self.field == other.field and self.diag == other.diag and self.upper == other.upper

    def __hash__(self):
        return hash((self.diag, self.upper))

    def __repr__(self):
        if self.char2:
            return f"QuadForm({self.field!r}, upper={[list(r) for r in self.upper]})"
        return "<" + ", ".join(map(str, self.diag)) + ">"


def orthogonal_sum(*forms: QuadForm) -> QuadForm:
    out = forms[0]
    for q in forms[1:]:
        out = out.perp(q)
    return out


def hyperbolic(F, planes: int = 1) -> QuadForm:
    if _is_char2(F):
        C = linalg.zeros(F, 2 * planes)
        for k in range(planes):
            C[2 * k][2 * k + 1] = F.one
        return QuadForm(F, upper=C)
    return QuadForm.diagonal(F, [1, -1] * planes)


# ---------------------------------------------------------------------------
# Pfister forms
# ---------------------------------------------------------------------------


def norm_form_etale(c: FieldElem) -> QuadForm:
    """<<c]]: the norm form of F_c (x^2 - c y^2, or x^2 + xy + c y^2 in char 2)."""
    F = c.field
    if _is_char2(F):
        return QuadForm(F, upper=[[F.one, F.one], [F.zero, c]])
    if c.is_zero():
        raise ZeroSlot("<<0]] is undefined outside characteristic 2")
    return QuadForm.diagonal(F, [1, -c])


def pfister(*slots: FieldElem) -> QuadForm:
    """<<a_1, ..., a_{n-1}; a_n]] = <<a_1>> x ... x <<a_{n-1}>> x <<a_n]]."""
    if not slots:
        raise ZeroSlot("a Pfister form needs at least one slot")
    phi = norm_form_etale(slots[-1])
    for a in reversed(slots[:-1]):
        if a.is_zero():
            raise ZeroSlot("bilinear Pfister slots must be nonzero")
        phi = phi.perp(phi.scale(-a))
    return phi


# ---------------------------------------------------------------------------
# Characteristic 2: Arf invariant via symplectic reduction
# ---------------------------------------------------------------------------


def symplectic_basis(q: QuadForm) -> list[tuple[list, list]]:
    """Pairs (e, f) with b_q(e, f) = 1 spanning an orthogonal decomposition.

    Pivot choice: the lowest-index pair of current vectors with nonzero pairing.
    """
    F = q.field
    n = q.dim
    vecs = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    B = q.polar_matrix()

    def b(u, v):
        return sum((u[i] * B[i][j] * v[j] for i in range(n) for j in range(n) if not B[i][j].is_zero()), F.zero)

    pairs = []
    while vecs:
        found = None
        for i in range(len(vecs)):
            for j in range(i + 1, len(vecs)):
                if not b(vecs[i], vecs[j]).is_zero():
                    found = (i, j)
                    break
            if found:
                break
        if found is None:
            break
        i, j = found
        e = vecs[i]
        s = b(e, vecs[j]).inv()
        f = [s * x for x in vecs[j]]
        rest = []
        for k, w in enumerate(vecs):
            if k in (i, j):
                continue
            # w - b(w, f) e + b(w, e) f, which in char 2 has the same signs
            bwf, bwe = b(w, f), b(w, e)
            rest.append([wk - bwf * ek + bwe * fk for wk, ek, fk in zip(w, e, f)])
        pairs.append((e, f))
        vecs = rest
    return pairs


def arf_invariant(q: QuadForm) -> int:
    """Arf invariant of an even-dimensional char 2 form as a bit in F_q/P(F_q)."""
    if not q.char2:
        raise WrongCharacteristic("Arf invariant is for characteristic 2")
    if q.dim % 2:
        raise OddDimension("Arf invariant needs even dimension")
    F = q.field
    total = F.zero
    for e, f in symplectic_basis(q):
        total = total + q.evaluate(e) * q.evaluate(f)
    return absolute_trace(total)


# ---------------------------------------------------------------------------
# Local data over Q
# ---------------------------------------------------------------------------


def _classes(q: QuadForm) -> list[int]:
    return [squarefree_rational(a) for a in q.diag]


def hasse_invariant(q: QuadForm, v) -> int:
    """s_v(q) = prod_{i<j} (a_i, a_j)_v."""
    s = 1
    prefix = 1
    for a in _classes(q):
        if prefix != 1:
            s *= hilbert_symbol(a, prefix, v)
        prefix = mul_square_classes(prefix, a)
    return s


def _places(q: QuadForm) -> list:
    primes = sorted(bad_primes(*_classes(q))) if q.dim else [2]
    return primes


def hasse_set(q: QuadForm) -> frozenset:
    """Places where the Hasse invariant is -1."""
    out = set()
    for p in _places(q):
        if hasse_invariant(q, p) == -1:
            out.add(p)
    if hasse_invariant(q, INFINITY) == -1:
        out.add(INFINITY)
    return frozenset(out)


def _det_class(q: QuadForm) -> int:
    d = 1
    for a in _classes(q):
        d = mul_square_classes(d, a)
    return d


def _local_isotropic(d: int, det: int, s: int, p) -> bool:
    if d <= 1:
        return False
    if d == 2:
        return is_local_square(-det, p)
    if d == 3:
        return s == hilbert_symbol(-1, -det, p)
    if d == 4:
        return (not is_local_square(det, p)) or s == hilbert_symbol(-1, -1, p)
    return True


def _local_aniso_dim(d: int, det: int, s: int, p) -> int:
    while d > 0 and _local_isotropic(d, det, s, p):
        # q = H + q', det q' = -det q, s(q') = s(q) (-1, det q')
        det = -det
        s = s * hilbert_symbol(-1, det, p)
        d -= 2
    return d


def local_anisotropic_dimension(q: QuadForm, p) -> int:
    if p == INFINITY:
        return abs(q.signature())
    return _local_aniso_dim(q.dim, _det_class(q), hasse_invariant(q, p), p)


# ---------------------------------------------------------------------------
# Cohomological invariants
# ---------------------------------------------------------------------------


def e1(q: QuadForm) -> CohClass:
    if q.dim % 2:
        raise OddDimension("e_1 needs an even-dimensional form")
    if q.char2:
        return CohClass(1, q.field, arf_invariant(q))
    if q.dim == 0:
        return zero_class(1, q.field)
    return h1_class(q.signed_discriminant())


def _e2_over_q(q: QuadForm) -> CohClass:
    m = q.dim // 2
    ram = hasse_set(q)
    if (m * (m - 1) // 2) % 2:
        ram = ram ^ frozenset({2, INFINITY})
    return CohClass(2, q.field, ram)


def e_n(q: QuadForm, n: int) -> CohClass:
    """e_n(q) in H^n(F); needs e_{n-1}(q) = 0 for n >= 2."""
    if n < 1:
        raise ValueError("n must be positive")
    if q.dim % 2:
        raise OddDimension("e_n needs an even-dimensional form")
    if n == 1:
        return e1(q)
    if not e_n(q, n - 1).is_zero:
        raise PreviousInvariantNonzero(f"e_{n - 1} does not vanish, so e_{n} is undefined")
    F = q.field
    if F.kind == "GF":
        return zero_class(n, F)
    if n == 2:
        return _e2_over_q(q)
    sig = q.signature()
    if sig % (2**n):
        raise RouteMismatch(f"signature {sig} of a form in I^{n} is not divisible by 2^{n}")
    return CohClass(n, F, (sig // 2**n) % 2)


def invariant_bound(dim: int) -> int:
    """Number of e_n that must vanish for hyperbolicity over the supported fields."""
    return max(3, math.ceil(math.log2(max(dim, 1))) + 1)


def invariant_chain(q: QuadForm, up_to: Optional[int] = None) -> list[CohClass]:
    """e_1, e_2, ... up to the first nonvanishing one (inclusive)."""
    up_to = invariant_bound(q.dim) if up_to is None else up_to
    out = []
    for n in range(1, up_to + 1):
        c = e_n(q, n)
        out.append(c)
        if not c.is_zero:
            break
    return out


# ---------------------------------------------------------------------------
# Witt classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WittClassQ:
    field: object
    invariants: tuple
    aniso_dim: int = field(compare=False)
    representative: Optional[QuadForm] = field(default=None, compare=False, repr=False)

    @property
    def is_zero(self) -> bool:
        return self.aniso_dim == 0


def _normalized_hasse(q: QuadForm) -> frozenset:
    """Hasse set of q + kH with dim(q + kH) = 0 or 1 mod 8; a Witt invariant."""
    S = hasse_set(q)
    det = _det_class(q)
    for _ in range((-(q.dim // 2)) % 4):
        S = S ^ ramification_set(det, -1)
        det = -det
    return S


def _first_nonsquare(F) -> FieldElem:
    return next(a for a in F.elements() if not a.is_zero() and not is_square(a))


def _first_trace_one(F) -> FieldElem:
    return next(a for a in F.elements() if absolute_trace(a) == 1)


def anisotropic_dimension(q: QuadForm) -> int:
    F = q.field
    if q.char2:
        if q.dim % 2:
            return 1
        return 2 if arf_invariant(q) else 0
    if F.kind == "GF":
        if q.dim % 2:
            return 1
        return 0 if is_square(q.signed_discriminant()) else 2
    dims = [abs(q.signature())]
    for p in _places(q):
        dims.append(local_anisotropic_dimension(q, p))
    return max(dims)


def _search_representative(q: QuadForm, d_an: int, bound: int = 4000) -> Optional[QuadForm]:
    F = q.field
    current = QuadForm(F, diag=[F(a) for a in _classes(q)], _checked=True)
    entries = []
    for step in range(d_an, 0, -1):
        if step == 1:
            a = F(squarefree_rational(current.signed_discriminant()))
        else:
            a = None
            for n in range(1, bound):
                if squarefree_rational(n) != n:
                    continue
                for cand in (n, -n):
                    trial = current.perp(QuadForm(F, diag=[F(-cand)], _checked=True))
                    if anisotropic_dimension(trial) == step - 1:
                        a = F(cand)
                        break
                if a is not None:
                    break
            if a is None:
                return None
        entries.append(a)
        current = current.perp(QuadForm(F, diag=[-a], _checked=True))
    return QuadForm(F, diag=entries, _checked=True)


def _representative(q: QuadForm, d_an: int) -> Optional[QuadForm]:
    F = q.field
    if d_an > 4:
        return None
    if d_an == 0:
        return QuadForm(F, diag=[] if not q.char2 else None, upper=[] if q.char2 else None, _checked=True)
    if q.char2:
        return QuadForm(F, upper=[[F.one, F.one], [F.zero, _first_trace_one(F)]], _checked=True)
    if F.kind == "GF":
        delta = q.signed_discriminant()
        if d_an == 1:
            return QuadForm(F, diag=[F.one if is_square(delta) else _first_nonsquare(F)], _checked=True)
        return QuadForm(F, diag=[F.one, -_first_nonsquare(F)], _checked=True)
    return _search_representative(q, d_an)


def witt_class(q: QuadForm, with_representative: bool = True) -> WittClassQ:
    F = q.field
    d_an = anisotropic_dimension(q)
    if q.char2:
        if q.dim % 2:
            raise OddDimension("Witt classes in characteristic 2 need even dimension")
        inv = (0, arf_invariant(q))
    elif F.kind == "GF":
        inv = (q.dim % 2, 0 if is_square(q.signed_discriminant()) else 1)
    else:
        delta = squarefree_rational(q.signed_discriminant()) if q.dim else 1
        inv = (q.dim % 2, delta, _normalized_hasse(q), q.signature())
    rep = _representative(q, d_an) if with_representative else None
    return WittClassQ(F, inv, d_an, rep)


def witt_decompose(q: QuadForm) -> tuple[int, WittClassQ]:
    """(Witt index, class of the anisotropic part)."""
    wc = witt_class(q)
    return (q.dim - wc.aniso_dim) // 2, wc


def witt_index(q: QuadForm) -> int:
    if q.char2 and q.dim % 2:
        return (q.dim - 1) // 2
    return (q.dim - anisotropic_dimension(q)) // 2


def is_isotropic(q: QuadForm) -> bool:
    F = q.field
    d = q.dim
    if d <= 1:
        return False
    if F.kind == "GF":
        if d >= 3:
            return True
        if q.char2:
            return arf_invariant(q) == 0
        return is_square(q.signed_discriminant())
    sig = q.signature()
    if abs(sig) == d:
        return False
    if d >= 5:
        return True
    det, places = _det_class(q), _places(q)
    return all(_local_isotropic(d, det, hasse_invariant(q, p), p) for p in places)


def is_hyperbolic(q: QuadForm) -> bool:
    """Decided twice: by Witt index and by vanishing of e_1, ..., e_N."""
    if q.dim % 2:
        return False
    by_index = 2 * witt_index(q) == q.dim
    by_invariants = all(c.is_zero for c in invariant_chain(q))
    if by_index != by_invariants:
        raise RouteMismatch(f"hyperbolicity routes disagree on {q!r}")
    return by_index


def equivalent(q: QuadForm, r: QuadForm, check: bool = False) -> bool:
    """Isometry of forms of equal dimension (Witt cancellation)."""
    if q.dim != r.dim:
        raise DimensionMismatch(f"dimensions {q.dim} and {r.dim} differ")
    same = witt_class(q, False) == witt_class(r, False)
    if check and (q.dim % 2 == 0 or not q.char2):
        other = is_hyperbolic(q.perp(-r))
        if other != same:
            raise RouteMismatch("Witt-class and e_n routes disagree on equivalence")
    return same


def clifford_invariant(q: QuadForm) -> CohClass:
    """Clifford invariant from the Hasse invariant and the dimension-mod-8
    correction table (char != 2); equals e_2(q) when e_1(q) = 0."""
    if q.char2:
        raise WrongCharacteristic("Clifford invariant via Hasse invariants needs char != 2")
    F = q.field
    if F.kind == "GF":
        return zero_class(2, F)
    ram = hasse_set(q)
    det = _det_class(q)
    r = q.dim % 8
    if r in (3, 4):
        ram = ram ^ ramification_set(-1, -det)
    elif r in (5, 6):
        ram = ram ^ ramification_set(-1, -1)
    elif r in (7, 0):
        ram = ram ^ ramification_set(-1, det)
    return CohClass(2, F, ram)
