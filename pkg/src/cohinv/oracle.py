"""Ground truth by brute force: exhaustive scans over small finite fields and
bounded-height searches over Q.

Vectors over F_q are enumerated lexicographically (first coordinate most
significant), so "the first witness" is well defined.  Parallel scans split
the index range into chunks and keep the smallest witness index, so results
do not depend on the schedule.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Optional

import numpy as np

from .errors import SearchSpaceTooLarge, WrongCharacteristic
from .scalars import _log_tables

DEFAULT_LIMIT = 2**22
CHUNK = 1 << 16


# ---------------------------------------------------------------------------
# Vectorized arithmetic on element codes
# ---------------------------------------------------------------------------


TABLE_MAX = 512


class _Arith:
    """Elementwise F_q arithmetic on integer codes: full tables for small q,
    otherwise modular arithmetic, XOR, digits and log/exp tables."""

    def __init__(self, F):
        self.F = F
        self.p, self.k, self.q = F.p, F.k, F.order
        if self.k > 1:
            log, exp = _log_tables(F)
            self.log = np.array(log, dtype=np.int64)
            self.exp = np.array(exp, dtype=np.int64)
        self.tables = None
        if self.q <= TABLE_MAX:
            r = np.arange(self.q, dtype=np.int64)
            a, b = np.meshgrid(r, r, indexing="ij")
            self.tables = (self._add(a, b), self._mul(a, b))

    def add(self, a, b):
        if self.tables is not None:
            return self.tables[0][a, b]
        return self._add(a, b)

    def mul(self, a, b):
        if self.tables is not None:
            return self.tables[1][a, b]
        return self._mul(a, b)

    def sadd(self, a: int, b: int) -> int:
        return self.F._add(a, b)

    def smul(self, a: int, b: int) -> int:
        return self.F._mul(a, b)

    def _add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.k):
            out += (((a // scale) % self.p + (b // scale) % self.p) % self.p) * scale
            scale *= self.p
        return out

    def _mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        zero = (a == 0) | (b == 0)
        idx = (self.log[a] + self.log[b]) % (self.q - 1)
        return np.where(zero, 0, self.exp[idx])


@lru_cache(maxsize=64)
def _arith(F) -> _Arith:
    return _Arith(F)


@lru_cache(maxsize=16)
def _all_coords(q, d):
    X = _coords(np.arange(q**d, dtype=np.int64), q, d)
    X.setflags(write=False)
    return X


def _coords(indices, q, d):
    """Coordinates of vectors with the given lexicographic indices."""
    out = np.empty((d, len(indices)), dtype=np.int64)
    rest = indices.copy()
    for i in range(d - 1, -1, -1):
        out[i] = rest % q
        rest //= q
    return out


def _coefficients(q):
    """Upper-triangular coefficient codes of a QuadForm."""
    C = q.coefficient_matrix()
    return [[c.value for c in row] for row in C]


def _eval_chunk(ar, C, X):
    d = len(C)
    val = np.zeros(X.shape[1], dtype=np.int64)
    for i in range(d):
        for j in range(i, d):
            c = C[i][j]
            if c:
                val = ar.add(val, ar.mul(c, ar.mul(X[i], X[j])))
    return val


def _check_size(q_order, d, limit):
    if q_order**d > limit:
        raise SearchSpaceTooLarge(f"{q_order}^{d} vectors exceed the limit {limit}")


def _first_zero(ar, C, d, lo, hi):
    idx = np.arange(max(lo, 1), hi, dtype=np.int64)
    if len(idx) == 0:
        return None
    X = _coords(idx, ar.q, d)
    hits = np.nonzero(_eval_chunk(ar, C, X) == 0)[0]
    return int(idx[hits[0]]) if len(hits) else None


def exhaustive_isotropy(q, limit: int = DEFAULT_LIMIT, workers: int = 1):
    """(isotropic?, first nonzero zero vector in lexicographic order or None)."""
    F = q.field
    if F.kind != "GF":
        raise WrongCharacteristic("exhaustive search needs a finite field")
    d = q.dim
    _check_size(F.order, d, limit)
    ar = _arith(F)
    C = _coefficients(q)
    total = F.order**d
    bounds = [(lo, min(lo + CHUNK, total)) for lo in range(0, total, CHUNK)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            found = [r for r in pool.map(lambda b: _first_zero(ar, C, d, *b), bounds) if r is not None]
        best = min(found) if found else None
    else:
        best = None
        for lo, hi in bounds:
            best = _first_zero(ar, C, d, lo, hi)
            if best is not None:
                break
    if best is None:
        return False, None
    X = _coords(np.array([best]), F.order, d)[:, 0]
    return True, [F.element(int(x)) for x in X]


def _all_values(ar, C, d):
    total = ar.q**d
    vals = np.empty(total, dtype=np.int64)
    for lo in range(0, total, CHUNK):
        hi = min(lo + CHUNK, total)
        idx = np.arange(lo, hi, dtype=np.int64)
        vals[lo:hi] = _eval_chunk(ar, C, _coords(idx, ar.q, d))
    return vals


def exhaustive_witt_index(q, limit: int = DEFAULT_LIMIT) -> int:
    """Dimension of a maximal totally isotropic subspace, grown one vector at a
    time from the lexicographically first admissible vector.  All maximal
    totally isotropic subspaces of a nondegenerate form have the same dimension,
    so any maximal one found this way gives the Witt index."""
    F = q.field
    if F.kind != "GF":
        raise WrongCharacteristic("exhaustive search needs a finite field")
    d = q.dim
    _check_size(F.order, d, limit)
    ar = _arith(F)
    C = _coefficients(q)
    P = [[(C[i][j] if i <= j else 0) for j in range(d)] for i in range(d)]
    # polar matrix codes P + P^T
    Pol = [[ar.sadd(P[i][j], P[j][i]) for j in range(d)] for i in range(d)]
    total = F.order**d
    X = _all_coords(F.order, d)
    ok = _all_values(ar, C, d) == 0
    ok[0] = False
    basis = []
    span = {0}
    while True:
        cand = np.nonzero(ok)[0]
        cand = cand[~np.isin(cand, np.fromiter(span, dtype=np.int64))]
        if len(cand) == 0:
            return len(basis)
        v = int(cand[0])
        vc = [int(x) for x in X[:, v]]
        # restrict to vectors orthogonal to v under the polar form
        lin = np.zeros(total, dtype=np.int64)
        for i in range(d):
            coef = 0
            for j in range(d):
                coef = ar.sadd(coef, ar.smul(Pol[i][j], vc[j]))
            if coef:
                lin = ar.add(lin, ar.mul(coef, X[i]))
        ok &= lin == 0
        basis.append(v)
        span = _span_indices(ar, X, basis, d)


def _span_indices(ar, X, basis, d):
    q = ar.q
    vecs = [[int(x) for x in X[:, b]] for b in basis]
    out = set()
    for coeffs in itertools.product(range(q), repeat=len(vecs)):
        acc = [0] * d
        for c, v in zip(coeffs, vecs):
            if c:
                acc = [ar.sadd(a, ar.smul(c, x)) for a, x in zip(acc, v)]
        idx = 0
        for x in acc:
            idx = idx * q + x
        out.add(idx)
    return out


def exhaustive_pair_isotropy(p, limit: int = DEFAULT_LIMIT):
    """Search for v != 0 with Trd(l phi_b(v (x) v)) = sum_jk v_j v_k (B l)_kj = 0."""
    from .pairs import split_model

    sp = split_model(p)
    F = sp.field
    if F.kind != "GF":
        raise WrongCharacteristic("exhaustive search needs a finite field")
    B = [[x.coords[0] for x in row] for row in sp.h.matrix()]
    L = [[x.coords[0] for x in row] for row in sp.l_matrix()]
    d = len(B)
    _check_size(F.order, d, limit)
    ar = _arith(F)
    BL = [[sum((B[k][i] * L[i][j] for i in range(d)), F.zero).value for j in range(d)] for k in range(d)]
    total = F.order**d
    for lo in range(1, total, CHUNK):
        idx = np.arange(lo, min(lo + CHUNK, total), dtype=np.int64)
        X = _coords(idx, F.order, d)
        val = np.zeros(len(idx), dtype=np.int64)
        for j in range(d):
            for k in range(d):
                if BL[k][j]:
                    val = ar.add(val, ar.mul(BL[k][j], ar.mul(X[j], X[k])))
        hits = np.nonzero(val == 0)[0]
        if len(hits):
            X0 = X[:, hits[0]]
            return True, [F.element(int(x)) for x in X0]
    return False, None


# ---------------------------------------------------------------------------
# Rationals
# ---------------------------------------------------------------------------


def _height_order(bound: int) -> list[int]:
    out = [0]
    for h in range(1, bound + 1):
        out += [h, -h]
    return out


def bounded_height_isotropy(q, height_bound: int) -> Optional[list[int]]:
    """First primitive integer vector (coordinates ordered 0, 1, -1, 2, -2, ...,
    first nonzero coordinate positive) with q(v) = 0, or None."""
    coeffs = [Fraction(a.value) for a in q.diag]
    den = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    ints = [int(c * den) for c in coeffs]
    order = _height_order(height_bound)
    for v in itertools.product(order, repeat=len(ints)):
        nz = next((x for x in v if x), 0)
        if nz <= 0:
            continue
        if sum(a * x * x for a, x in zip(ints, v)) != 0:
            continue
        g = 0
        for x in v:
            g = gcd(g, x)
        if g == 1:
            return list(v)
    return None


# ---------------------------------------------------------------------------
# Hilbert symbol at 2
# ---------------------------------------------------------------------------


def hilbert_symbol_mod2k(a: int, b: int, N: int = 6) -> int:
    """+1 iff z^2 = a x^2 + b y^2 has a primitive solution modulo 2^N."""
    M = 1 << N
    r = np.arange(M, dtype=np.int64)
    x, y, z = np.meshgrid(r, r, r, indexing="ij")
    primitive = (x % 2 == 1) | (y % 2 == 1) | (z % 2 == 1)
    sol = ((z * z - a * x * x - b * y * y) % M == 0) & primitive
    return 1 if sol.any() else -1


# ---------------------------------------------------------------------------
# Classifier audit
# ---------------------------------------------------------------------------


def forms_over(F, dim: int, sample: Optional[int] = None, seed: int = 0, cap: int = 10**5):
    """Every nondegenerate form of the given dimension over F (diagonal in odd
    characteristic, upper-triangular in characteristic 2), or a seeded random
    sample when there are more than cap candidates."""
    import random

    from .errors import Degenerate
    from .quadforms import QuadForm

    char2 = F.p == 2
    nonzero = [e for e in F.elements() if not e.is_zero()]
    if char2:
        slots = dim * (dim + 1) // 2
        count = F.order**slots
    else:
        slots = dim
        count = len(nonzero) ** dim
    if sample is None and count > cap:
        sample = 1000
    pool = list(F.elements()) if char2 else nonzero

    def build(entries):
        try:
            if char2:
                C = [[F.zero] * dim for _ in range(dim)]
                it = iter(entries)
                for i in range(dim):
                    for j in range(i, dim):
                        C[i][j] = next(it)
                return QuadForm.from_upper(F, C)
            return QuadForm.diagonal(F, list(entries))
        except Degenerate:
            return None

    if sample is None:
        for entries in itertools.product(pool, repeat=slots):
            q = build(entries)
            if q is not None:
                yield q
        return
    # draw until `sample` nondegenerate forms have been produced
    rng = random.Random(seed)
    produced = 0
    for _ in range(100 * sample):
        if produced == sample:
            return
        q = build(tuple(rng.choice(pool) for _ in range(slots)))
        if q is not None:
            produced += 1
            yield q


def classifier_mismatches(F, max_dim: int = 4, sample: Optional[int] = None, seed: int = 0) -> dict:
    """Compare is_isotropic and witt_index with brute force on forms over F."""
    from .quadforms import is_isotropic, witt_index

    checked = mismatches = 0
    for d in range(1, max_dim + 1):
        for q in forms_over(F, d, sample, seed):
            checked += 1
            iso, _ = exhaustive_isotropy(q)
            if iso != is_isotropic(q) or exhaustive_witt_index(q) != witt_index(q):
                mismatches += 1
    return {"field_order": F.order, "checked": checked, "mismatches": mismatches}
