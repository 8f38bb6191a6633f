"""Canonical representatives for H^n(F) = H^n(F, Z/2(n-1)).

Payloads by case:

* degree 1, char != 2: square class (squarefree int over Q, bit over F_q)
* degree 1, char 2: Artin-Schreier bit
* degree 2 over Q: frozenset of ramified places
* degree >= 3 over Q: the real-place bit
* degree >= 2 over F_q: the zero group, payload 0
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import FieldMismatch, UnsupportedDegreeCombination, ZeroElement
from .scalars import (
    INFINITY,
    FieldElem,
    artin_schreier_class,
    bad_primes,
    hilbert_symbol,
    mul_square_classes,
    sorted_places,
    square_class,
    squarefree_rational,
)


@dataclass(frozen=True)
class CohClass:
    degree: int
    field: object
    payload: object
    # provenance only, e.g. ("quaternion", a, b); never compared
    tag: Optional[tuple] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.degree == 2 and self.field.kind == "Q":
            assert len(self.payload) % 2 == 0, "ramification sets have even size"

    @property
    def is_zero(self) -> bool:
        if self.degree == 1 and self.field.kind == "Q":
            return self.payload == 1
        if self.degree == 2 and self.field.kind == "Q":
            return not self.payload
        return self.payload == 0

    def __add__(self, other: "CohClass") -> "CohClass":
        if not isinstance(other, CohClass):
            return NotImplemented
        if other.degree != self.degree or other.field != self.field:
            raise FieldMismatch("can only add classes of the same degree over the same field")
        if self.degree == 1 and self.field.kind == "Q":
            payload = mul_square_classes(self.payload, other.payload)
        elif self.degree == 2 and self.field.kind == "Q":
            payload = self.payload ^ other.payload
        else:
            payload = self.payload ^ other.payload
        return CohClass(self.degree, self.field, payload)

    __sub__ = __add__  # 2-torsion

    def __neg__(self):
        return self

    def __mul__(self, k: int) -> "CohClass":
        return self if k % 2 else zero_class(self.degree, self.field)

    __rmul__ = __mul__

    def real_component(self) -> int:
        """Restriction to H^n(R) as a bit (rationals only)."""
        if self.field.kind != "Q":
            raise UnsupportedDegreeCombination("no real place")
        if self.degree == 1:
            return 1 if self.payload < 0 else 0
        if self.degree == 2:
            return 1 if INFINITY in self.payload else 0
        return self.payload

    def places(self) -> list:
        return sorted_places(self.payload)

    def __repr__(self):
        if self.degree == 2 and self.field.kind == "Q":
            body = "{" + ", ".join(map(str, self.places())) + "}"
        else:
            body = str(self.payload)
        return f"H{self.degree}[{body}]"


def zero_class(degree: int, field) -> CohClass:
    if field.kind == "Q":
        if degree == 1:
            return CohClass(1, field, 1)
        if degree == 2:
            return CohClass(2, field, frozenset())
    return CohClass(degree, field, 0)


def h1_class(a: FieldElem) -> CohClass:
    """(a) in H^1 for char != 2."""
    return CohClass(1, a.field, square_class(a))


def as_class(c: FieldElem) -> CohClass:
    """(c] in H^1: the class of the quadratic etale algebra F_c."""
    F = c.field
    if F.kind == "GF" and F.p == 2:
        return CohClass(1, F, artin_schreier_class(c))
    if c.is_zero():
        raise ZeroElement("F_c needs c != 0 outside characteristic 2")
    return h1_class(c)


def ramification_set(a, b) -> frozenset:
    """Places of Q where the quaternion symbol (a, b) ramifies."""
    sa, sb = squarefree_rational(a), squarefree_rational(b)
    out = set()
    if sa < 0 and sb < 0:
        out.add(INFINITY)
    for p in bad_primes(sa, sb):
        if hilbert_symbol(sa, sb, p) == -1:
            out.add(p)
    return frozenset(out)


def _ram_from_classes(x: CohClass, y: CohClass) -> frozenset:
    return ramification_set(x.payload, y.payload)


def cup(x: CohClass, y: CohClass) -> CohClass:
    """Cup product H^i x H^j -> H^(i+j)."""
    if x.field != y.field:
        raise FieldMismatch("cup product of classes over different fields")
    F = x.field
    n = x.degree + y.degree
    if F.kind == "GF":
        if F.p == 2 and x.degree == 1 and y.degree == 1:
            # (c] u (c'] is not a symbol; only (a) u (c] is, and (a) is trivial here
            raise UnsupportedDegreeCombination("cup of two Artin-Schreier classes")
        return zero_class(n, F)
    if n == 2:
        return CohClass(2, F, _ram_from_classes(x, y))
    # H^n(Q) for n >= 3 is carried by the real place, where restriction is a
    # ring map onto F_2[t]
    return CohClass(n, F, x.real_component() & y.real_component())


def symbol(*entries: FieldElem) -> CohClass:
    """(a_1) u ... u (a_n) over Q or F_q (odd characteristic)."""
    if not entries:
        raise UnsupportedDegreeCombination("empty symbol")
    result = h1_class(entries[0])
    for a in entries[1:]:
        result = cup(result, h1_class(a))
    return result


def brauer_class_of_quaternion(a: FieldElem, b: FieldElem) -> CohClass:
    """Class of (a, b)_F in Br(F)[2]; zero iff the algebra splits."""
    if a.is_zero() or b.is_zero():
        raise ZeroElement("quaternion parameters must be nonzero")
    F = a.field
    if F.kind == "GF":
        return CohClass(2, F, 0, tag=("quaternion", a, b))
    return CohClass(2, F, ramification_set(a, b), tag=("quaternion", a, b))


# alias used in type discussions
BrauerClass2 = CohClass
