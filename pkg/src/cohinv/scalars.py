"""Exact scalars: the rationals, finite fields, places of Q, square classes,
Artin-Schreier classes and Hilbert symbols.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator, Union

import sympy

from .errors import (
    DivisionByZero,
    FieldMismatch,
    InvariantViolation,
    WrongCharacteristic,
    ZeroElement,
)

MAX_FIELD_ORDER = 2**20

INFINITY = "inf"
Place = Union[int, str]


# ---------------------------------------------------------------------------
# Base fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rationals:
    kind = "Q"

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def is_finite(self) -> bool:
        return False

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not an element of Q")
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        elif isinstance(value, float):
            raise TypeError("floats are not exact; pass an int, Fraction or 'p/q' string")
        return FieldElem(self, Fraction(value))

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, Fraction(0))

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, Fraction(1))

    def __repr__(self):
        return "QQ"


QQ = Rationals()


def _poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    """Divide polynomials over F_p given as low-to-high coefficient lists."""
    num = list(num)
    dd = len(den) - 1
    inv_lead = pow(den[-1], p - 2, p)
    quot = [0] * max(len(num) - dd, 1)
    for shift in range(len(num) - 1 - dd, -1, -1):
        c = num[shift + dd] * inv_lead % p
        quot[shift] = c
        if c:
            for i, d in enumerate(den):
                num[shift + i] = (num[shift + i] - c * d) % p
    rem = num[:dd] if dd > 0 else [0]
    return quot, rem


def _is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    k = len(modulus) - 1
    for deg in range(1, k // 2 + 1):
        # every monic polynomial of this degree
        for code in range(p**deg):
            cand = [(code // p**i) % p for i in range(deg)] + [1]
            _, rem = _poly_divmod(list(modulus), cand, p)
            if not any(rem):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """The monic irreducible of degree k with the smallest base-p encoding."""
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        cand = tuple((code // p**i) % p for i in range(k)) + (1,)
        if cand[0] and _is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True)
class FiniteField:
    """F_q with q = p^k, elements encoded as integers 0..q-1 whose base-p digits
    are the coefficients of the residue polynomial (low degree first)."""

    p: int
    k: int = 1
    modulus: tuple[int, ...] = None
    kind = "GF"

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise InvariantViolation(f"characteristic {self.p} is not prime")
        if self.k < 1:
            raise InvariantViolation("extension degree must be positive")
        if self.p**self.k > MAX_FIELD_ORDER:
            raise InvariantViolation(f"field order {self.p}^{self.k} exceeds 2^20")
        if self.modulus is None:
            object.__setattr__(self, "modulus", default_modulus(self.p, self.k))
        else:
            mod = tuple(int(c) % self.p for c in self.modulus)
            object.__setattr__(self, "modulus", mod)
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise InvariantViolation("modulus must be monic of degree k")
        if self.k > 1 and not _is_irreducible(self.modulus, self.p):
            raise InvariantViolation(f"modulus {self.modulus} is reducible over F_{self.p}")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p**self.k

    @property
    def is_finite(self) -> bool:
        return True

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not an element of {self!r}")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) > self.k:
                raise InvariantViolation(f"too many coefficients for F_{self.order}")
            return FieldElem(self, sum((int(c) % self.p) * self.p**i for i, c in enumerate(value)))
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DivisionByZero(f"{value} has denominator divisible by {self.p}")
            value = value.numerator * pow(value.denominator, -1, self.p)
        if isinstance(value, str):
            return self(Fraction(value))
        return FieldElem(self, int(value) % self.p)

    def element(self, code: int) -> "FieldElem":
        """Element from its integer encoding."""
        if not 0 <= code < self.order:
            raise InvariantViolation(f"code {code} out of range")
        return FieldElem(self, code)

    def elements(self) -> Iterator["FieldElem"]:
        for code in range(self.order):
            yield FieldElem(self, code)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"

    # -- code-level arithmetic ------------------------------------------------

    def digits(self, code: int) -> list[int]:
        return [(code // self.p**i) % self.p for i in range(self.k)]

    def encode(self, digits) -> int:
        return sum(d * self.p**i for i, d in enumerate(digits))

    def _add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def _neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.encode([(-d) % self.p for d in self.digits(a)])

    def _mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        log, exp = _log_tables(self)
        return exp[(log[a] + log[b]) % (self.order - 1)]

    def _inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        log, exp = _log_tables(self)
        return exp[(-log[a]) % (self.order - 1)]

    def _poly_mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        _, rem = _poly_divmod(prod, list(self.modulus), p)
        return self.encode(rem + [0] * (k - len(rem)))


_TABLES: dict = {}


def _log_tables(F: FiniteField) -> tuple[list[int], list[int]]:
    tables = _TABLES.get(F)
    if tables is None:
        q = F.order
        primes = list(sympy.factorint(q - 1))
        gen = None
        for g in range(2, q):
            if all(_poly_pow(F, g, (q - 1) // r) != 1 for r in primes):
                gen = g
                break
        if gen is None:  # only happens for q == 2, excluded since k > 1
            raise AssertionError("no primitive element")
        exp = [0] * (q - 1)
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = F._poly_mul(x, gen)
        tables = (log, exp)
        _TABLES[F] = tables
    return tables


def _poly_pow(F: FiniteField, a: int, e: int) -> int:
    result = 1
    while e:
        if e & 1:
            result = F._poly_mul(result, a)
        a = F._poly_mul(a, a)
        e >>= 1
    return result


def GF(p: int, k: int = 1, modulus=None) -> FiniteField:
    return FiniteField(p, k, None if modulus is None else tuple(modulus))


BaseField = Union[Rationals, FiniteField]


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


class FieldElem:
    """An exact element of Q or F_q; immutable."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.field.kind == "Q":
            return FieldElem(self.field, self.value + other.value)
        return FieldElem(self.field, self.field._add(self.value, other.value))

    __radd__ = __add__

    def __neg__(self):
        if self.field.kind == "Q":
            return FieldElem(self.field, -self.value)
        return FieldElem(self.field, self.field._neg(self.value))

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
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.field.kind == "Q":
            return FieldElem(self.field, self.value * other.value)
        return FieldElem(self.field, self.field._mul(self.value, other.value))

    __rmul__ = __mul__

    def inv(self) -> "FieldElem":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.field.kind == "Q":
            return FieldElem(self.field, 1 / self.value)
        return FieldElem(self.field, self.field._inv(self.value))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self == self.field(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field.kind, self.value))

    @property
    def coeffs(self) -> list[int]:
        """Residue polynomial coefficients (finite fields only)."""
        return self.field.digits(self.value)

    def sign(self) -> int:
        """Sign at the real place (rationals only)."""
        if self.field.kind != "Q":
            raise WrongCharacteristic("sign is only defined over Q")
        return (self.value > 0) - (self.value < 0)

    def __repr__(self):
        if self.field.kind == "Q":
            return str(self.value)
        if self.field.k == 1:
            return f"{self.value}"
        return "[" + ",".join(map(str, self.coeffs)) + "]"

    __str__ = __repr__


# ---------------------------------------------------------------------------
# Places, square classes, Hilbert symbols
# ---------------------------------------------------------------------------


def make_place(v) -> Place:
    if v in (INFINITY, "infinity", "oo", "Infinity"):
        return INFINITY
    if isinstance(v, bool) or not isinstance(v, int) or not sympy.isprime(v):
        raise InvariantViolation(f"{v!r} is neither a prime nor the infinite place")
    return v


def place_key(v: Place):
    return (1, 0) if v == INFINITY else (0, v)


def sorted_places(places) -> list[Place]:
    return sorted(places, key=place_key)


@lru_cache(maxsize=65536)
def _squarefree_int(n: int) -> int:
    if n == 0:
        raise ZeroElement("zero has no square class")
    sign = -1 if n < 0 else 1
    out = 1
    for prime, e in sympy.factorint(abs(n)).items():
        if e % 2:
            out *= prime
    return sign * out


def _as_fraction(a) -> Fraction:
    if isinstance(a, FieldElem):
        if a.field.kind != "Q":
            raise WrongCharacteristic("expected a rational")
        return a.value
    return Fraction(a)


def squarefree_rational(a) -> int:
    """The squarefree integer in the class a * Q*^2."""
    a = _as_fraction(a)
    if a == 0:
        raise ZeroElement("zero has no square class")
    return _squarefree_int(a.numerator * a.denominator)


def mul_square_classes(s: int, t: int) -> int:
    g = gcd(s, t)
    return (s // g) * (t // g)


def is_square(a: FieldElem) -> bool:
    F = a.field
    if a.is_zero():
        return True
    if F.kind == "Q":
        return squarefree_rational(a) == 1
    if F.p == 2:
        return True
    return (a ** ((F.order - 1) // 2)) == F.one


def square_class(a: FieldElem):
    """Canonical image of a in F*/F*^2.

    Over Q: the squarefree integer representative.  Over F_q with q odd: 0 for
    squares, 1 for nonsquares.
    """
    if a.is_zero():
        raise ZeroElement("square class of zero")
    F = a.field
    if F.kind == "Q":
        return squarefree_rational(a)
    if F.p == 2:
        raise WrongCharacteristic("square classes are trivial in characteristic 2; use artin_schreier_class")
    return 0 if is_square(a) else 1


def absolute_trace(c: FieldElem) -> int:
    """Tr_{F_q/F_p}(c) as an integer mod p."""
    F = c.field
    if F.kind == "Q":
        raise WrongCharacteristic("absolute trace needs a finite field")
    total, x = F.zero, c
    for _ in range(F.k):
        total = total + x
        x = x ** F.p
    return total.value


def artin_schreier_class(c: FieldElem) -> int:
    """0 iff c = x^2 - x for some x in F_q, else 1 (characteristic 2)."""
    F = c.field
    if F.kind == "Q" or F.p != 2:
        raise WrongCharacteristic("Artin-Schreier classes need characteristic 2")
    return absolute_trace(c)


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


# epsilon(u) = (u-1)/2 mod 2 and omega(u) = (u^2-1)/8 mod 2 on units mod 8
_EPS = {1: 0, 3: 1, 5: 0, 7: 1}
_OMEGA = {1: 0, 3: 1, 5: 1, 7: 0}


def _split_p(s: int, p: int) -> tuple[int, int]:
    if s % p == 0:
        return 1, s // p
    return 0, s


def hilbert_symbol(a, b, v: Place) -> int:
    """(a, b)_v for nonzero rationals a, b: +1 iff z^2 = a x^2 + b y^2 has a
    nonzero solution over Q_v."""
    sa, sb = squarefree_rational(a), squarefree_rational(b)
    return _hilbert_sf(sa, sb, v)


@lru_cache(maxsize=1 << 18)
def _hilbert_sf(sa: int, sb: int, v: Place) -> int:
    if v == INFINITY:
        return -1 if (sa < 0 and sb < 0) else 1
    p = v
    alpha, u = _split_p(sa, p)
    beta, w = _split_p(sb, p)
    if p == 2:
        u8, w8 = u % 8, w % 8
        e = _EPS[u8] * _EPS[w8] + alpha * _OMEGA[w8] + beta * _OMEGA[u8]
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta:
        sign *= legendre(u, p)
    if alpha:
        sign *= legendre(w, p)
    return sign


def is_local_square(s: int, v: Place) -> bool:
    """Whether the squarefree integer s is a square in Q_v."""
    if v == INFINITY:
        return s > 0
    if s % v == 0:
        return False
    if v == 2:
        return s % 8 == 1
    return legendre(s, v) == 1


def bad_primes(*values) -> set[int]:
    """2 together with every prime dividing a numerator or denominator."""
    primes = {2}
    for a in values:
        s = squarefree_rational(a)
        primes.update(sympy.factorint(abs(s)))
    return primes


def relevant_places(*values) -> list[Place]:
    return sorted_places(bad_primes(*values) | {INFINITY})
