"""Acceptance criteria, one test each, all exact.

Each test records a PASS/FAIL line; conftest.py prints them in the terminal
summary, and running this file directly prints them as well.
"""

import itertools
import json
import random
import time
from pathlib import Path

import pytest

from cohinv import cli, linalg, oracle
from cohinv import hermitian as hm
from cohinv import pairs as pr
from cohinv import quadforms as qf
from cohinv.algebras import quad_etale, quaternion, split_algebra
from cohinv.cohomology import as_class, ramification_set, symbol
from cohinv.errors import Degenerate, InvariantViolation
from cohinv.hermitian import HermForm, _closed_formula, jacobson_trace
from cohinv.morita import AdjointForm, morita_lift, reduce_pair, star_product
from cohinv.pairs import HermPair, split_bilinear_pair
from cohinv.quadforms import e_n, invariant_bound, pfister
from cohinv.scalars import GF, QQ, hilbert_symbol

RESULTS = {}
DATA = Path(__file__).parent / "data"

QUATERNIONS = [(-1, -1), (-1, -3), (2, 5), (-2, -5), (3, -7), (-1, 7)]
ETALE = [-1, 2, -3, 5, -7, 6]


def record(n, ok, detail):
    RESULTS[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[n])
    return ok


def height(rng, bound=20):
    return rng.choice([-1, 1]) * rng.randint(1, bound)


def random_gram(A, r, rng, bound=4):
    """A random hermitian Gram matrix (not necessarily diagonal)."""
    G = [[A.zero] * r for _ in range(r)]
    for i in range(r):
        G[i][i] = A(height(rng, bound))
        for j in range(i + 1, r):
            x = A([rng.randint(-bound, bound) for _ in range(A.dim)])
            G[i][j] = x
            G[j][i] = x.conj()
    return G


# ---------------------------------------------------------------------------


def criterion_1():
    rng = random.Random(101)
    algs = [quaternion(QQ, a, b) for a, b in QUATERNIONS]
    assert not any(A.is_split() for A in algs)
    t0 = time.perf_counter()
    agree = total = 0
    for k in range(240):
        A = algs[k % len(algs)]
        r = rng.randint(1, 4)
        h = HermForm.diagonal(A, [height(rng) for _ in range(r)])
        q = jacobson_trace(h)
        for n in (1, 2, 3):
            if n == 3 and r % 2:
                break
            total += 1
            agree += e_n(q, n) == _closed_formula(h, n)
    dt = time.perf_counter() - t0
    ok = agree == total and dt < 10
    return record(1, ok, f"quaternionic closed formulas: {agree}/{total} agree over 240 forms, {dt:.1f}s")


def criterion_2():
    rng = random.Random(202)
    algs = [quad_etale(QQ, c) for c in ETALE]
    t0 = time.perf_counter()
    agree = total = 0
    for k in range(240):
        A = algs[k % len(algs)]
        r = rng.randint(1, 4)
        h = HermForm.diagonal(A, [height(rng) for _ in range(r)])
        q = jacobson_trace(h)
        e1 = e_n(q, 1)
        total += 2 if r % 2 == 0 else 1
        agree += e1 == _closed_formula(h, 1) == A.h1_class() * r
        if r % 2 == 0:
            agree += e_n(q, 2) == _closed_formula(h, 2)
    dt = time.perf_counter() - t0
    ok = agree == total and dt < 10
    return record(2, ok, f"unitary closed formulas: {agree}/{total} agree over 240 forms, {dt:.1f}s")


def criterion_3():
    rng = random.Random(303)
    algs = [quaternion(QQ, a, b) for a, b in QUATERNIONS[:3]] + [quad_etale(QQ, c) for c in ETALE[:3]]
    agree = total = hyperbolic = 0
    while total < 520:
        A = algs[total % len(algs)]
        kind = total % 4
        r = rng.randint(1, 2)
        try:
            if kind == 0:  # forced hyperbolic
                g = HermForm(A, random_gram(A, r, rng))
                h = hm.orthogonal_sum(g, hm.negate(g))
            elif kind == 1:  # forced anisotropic: positive definite
                h = HermForm.diagonal(A, [rng.randint(1, 20) for _ in range(r + 1)])
            elif kind == 2:
                h = HermForm(A, random_gram(A, rng.randint(1, 3), rng))
            else:
                h = hm.orthogonal_sum(hm.hyperbolic_form(A), HermForm.diagonal(A, [height(rng) for _ in range(r)]))
        except Degenerate:
            continue
        q = jacobson_trace(h)
        N = max(3, invariant_bound(q.dim))
        by_inv = all(c.is_zero for c in qf.invariant_chain(q, N))
        by_decider = hm.is_hyperbolic_hermitian(h)
        expected = {0: True, 1: False}.get(kind, by_decider)
        total += 1
        hyperbolic += by_decider
        agree += by_inv == by_decider == expected
    ok = agree == total
    return record(3, ok, f"hyperbolic iff all e_n vanish: {agree}/{total} agree ({hyperbolic} hyperbolic)")


def criterion_4():
    rng = random.Random(404)
    algs = [quaternion(QQ, a, b) for a, b in QUATERNIONS[:3]] + [quad_etale(QQ, c) for c in ETALE[:3]]
    S = split_algebra(QQ)
    agree = total = 0
    while total < 120:
        A = algs[total % len(algs)] if total % 4 else S
        s = rng.randint(1, 2)
        r = rng.randint(1, 2)
        try:
            f = HermForm(A, random_gram(A, s, rng, 3))
            g = HermForm(A, random_gram(A, r * s, rng, 3))
        except Degenerate:
            continue
        h = morita_lift(f, g)
        mu = height(rng, 9)
        f2 = hm.scale(f, mu)
        h2 = AdjointForm(f2, h.blocks, h.epsilon)
        g2 = star_product(f2, h2)
        if A is S:
            if (r * s) % 2:
                continue
            half = [[S(QQ("1/2")) if i == j else S(0) for j in range(r * s)] for i in range(r * s)]
            same = pr.pair_invariants(reduce_pair(h, half)) == pr.pair_invariants(reduce_pair(h2, half))
            same = same and pr.pair_invariants(HermPair(g)) == pr.pair_invariants(reduce_pair(h, half))
        else:
            same = hm.invariants(g) == hm.invariants(star_product(f, h)) == hm.invariants(g2)
            # composing with a rank-one reference f1 = <1> changes nothing either
            one = HermForm.diagonal(A, [1])
            same = same and hm.invariants(star_product(one, morita_lift(one, g))) == hm.invariants(g)
        total += 1
        agree += same
    ok = agree == total
    return record(4, ok, f"Morita invariance: {agree}/{total} agree")


def criterion_5():
    rng = random.Random(505)
    agree = total = 0
    for k in range(120):
        n = 1 + k % 4
        slots = [QQ(height(rng)) for _ in range(n)]
        q = pfister(*slots)
        good = all(e_n(q, m).is_zero for m in range(1, n)) and e_n(q, n) == symbol(*slots)
        if n == 1:
            good = e_n(q, 1) == as_class(slots[0])
        total += 1
        agree += good
    kernel = ktotal = 0
    for k in range(120):
        n = 1 + k % 3
        parts = []
        for _ in range(rng.randint(1, 2)):
            phi = pfister(*[QQ(height(rng)) for _ in range(n + 1)])
            parts.append(phi.scale(QQ(height(rng))))
        q = qf.orthogonal_sum(*parts)
        ktotal += 1
        kernel += all(e_n(q, m).is_zero for m in range(1, n + 1))
    ok = agree == total and kernel == ktotal
    return record(5, ok, f"Pfister chain {agree}/{total}, kernel {kernel}/{ktotal}")


def _char2_pairs():
    """All binary char-2 pairs over F_2, F_4, F_8, and sampled rank-4 pairs over F_2."""
    for F in (GF(2), GF(2, 2), GF(2, 3)):
        elems = list(F.elements())
        for x in elems[1:]:
            B = [[F.zero, x], [x, F.zero]]
            # sigma([[a, b], [c, d]]) = [[d, b], [c, a]], so l + sigma(l) = 1 means d = a + 1
            for a, b, c in itertools.product(elems, repeat=3):
                yield split_bilinear_pair(F, B, [[a, b], [c, a + F.one]])
            if F.order == 8:
                break  # over F_8 one b is enough; rescaling b is a change of basis
    rng = random.Random(606)
    for up in itertools.product([0, 1], repeat=6):
        B = [[0] * 4 for _ in range(4)]
        it = iter(up)
        for i in range(4):
            for j in range(i + 1, 4):
                B[i][j] = B[j][i] = next(it)
        if linalg.det([[GF(2)(v) for v in row] for row in B], GF(2)).is_zero():
            continue
        kept = 0
        while kept < 8:
            l = [[rng.randint(0, 1) for _ in range(4)] for _ in range(4)]
            # B^-1 = B up to the symplectic swap; test l + sigma(l) = 1 with plain integers
            sig = _sigma_mod2(B, l)
            if all((l[i][j] + sig[i][j]) % 2 == (i == j) for i in range(4) for j in range(4)):
                kept += 1
                yield split_bilinear_pair(GF(2), B, l)


def _sigma_mod2(B, l):
    F = GF(2)
    Binv = [[v.value for v in row] for row in linalg.inverse([[F(v) for v in row] for row in B], F)]
    lt = [[l[j][i] for j in range(4)] for i in range(4)]
    prod = [[sum(Binv[i][k] * lt[k][j] for k in range(4)) % 2 for j in range(4)] for i in range(4)]
    return [[sum(prod[i][k] * B[k][j] for k in range(4)) % 2 for j in range(4)] for i in range(4)]


def criterion_6():
    t0 = time.perf_counter()
    fields = [GF(2), GF(3), GF(2, 2), GF(5), GF(7), GF(2, 3), GF(3, 2)]
    checked = mismatches = 0
    for F in fields:
        out = oracle.classifier_mismatches(F, max_dim=4)
        checked += out["checked"]
        mismatches += out["mismatches"]
    pairs = pmis = 0
    for p in _char2_pairs():
        pairs += 1
        pmis += oracle.exhaustive_pair_isotropy(p)[0] != pr.is_isotropic_pair(p)
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and pmis == 0 and dt < 60
    return record(
        6, ok, f"oracle: {mismatches} mismatches in {checked} forms, {pmis} in {pairs} char-2 pairs, {dt:.1f}s"
    )


def criterion_7():
    rng = random.Random(707)
    even = 0
    for _ in range(1200):
        a = QQ(height(rng, 10**4)) / QQ(rng.randint(1, 50))
        b = QQ(height(rng, 10**4)) / QQ(rng.randint(1, 50))
        even += len(ramification_set(a, b)) % 2 == 0
    classes = [1, 3, 5, 7, 2, 6, 10, 14]
    pairs = [(a, b) for a in classes for b in classes]
    brute = sum(oracle.hilbert_symbol_mod2k(a, b, 6) == hilbert_symbol(a, b, 2) for a, b in pairs)
    units = [(a, b) for a in (1, 3, 5, 7) for b in (1, 3, 5, 7)]
    mod8 = sum(oracle.hilbert_symbol_mod2k(a, b, 3) == hilbert_symbol(a, b, 2) for a, b in units)
    ok = even == 1200 and brute == len(pairs) and mod8 == len(units)
    return record(
        7,
        ok,
        f"product formula {even}/1200; brute force at 2: {brute}/{len(pairs)} (mod 64), units {mod8}/16 (mod 8)",
    )


def criterion_8():
    rng = random.Random(808)
    algs = [quaternion(QQ, a, b) for a, b in QUATERNIONS]
    zero = total = 0
    odd_negative = 0
    for k in range(120):
        A = algs[k % len(algs)]
        r = rng.randint(1, 4)
        h = HermForm.diagonal(A, [height(rng) for _ in range(r)])
        lam = height(rng)
        value = hm.relative_e3(hm.scale(h, lam), h)
        total += 1
        zero += value.is_zero
        odd_negative += (not value.is_zero) and r % 2 == 1 and lam < 0
    ok = zero == total
    detail = f"relative e3(lam h, h) = 0 in {zero}/{total}"
    if not ok and odd_negative == total - zero:
        detail += "; every failure has odd rank, lam < 0 and D ramified at inf"
    return record(8, ok, detail)


def _random_skew(A, r, rng, coords=None):
    G = [[A.zero] * r for _ in range(r)]
    for i in range(r):
        G[i][i] = A([0] + [rng.randint(-3, 3) for _ in range(3)])
        for j in range(i + 1, r):
            x = A([rng.randint(-3, 3) for _ in range(4)])
            G[i][j] = x
            G[j][i] = -x.conj()
    return G


def _transfer(G, B):
    """The same coordinates read in another quaternion algebra."""
    return [[B(list(x.coords)) for x in row] for row in G]


def criterion_9():
    rng = random.Random(909)
    algs = {(-1, -1): quaternion(QQ, -1, -1), (-1, -3): quaternion(QQ, -1, -3)}
    # split specializations: keep a and move b to a value making (a, b) split
    specialize = {(-1, -1): [(-1, 1), (-1, 2), (-1, 5)], (-1, -3): [(-1, 1), (-1, 2), (1, -3)]}
    hyp_ok = hyp_total = spec_ok = spec_total = 0
    count = 0
    while count < 120:
        key = list(algs)[count % 2]
        A = algs[key]
        r = rng.randint(1, 3)
        G = _random_skew(A, r, rng)
        try:
            h = HermForm(A, G, -1)
        except Degenerate:
            continue
        count += 1
        # hyperbolic constructions
        for hyp in (hm.orthogonal_sum(h, hm.negate(h)), hm.hyperbolic_form(A, r, -1)):
            hyp_total += 1
            hyp_ok += pr.quaternionic_pair_e1(HermPair(hyp)).is_zero
        # the same coordinates in split algebras
        for a, b in specialize[key]:
            B = quaternion(QQ, a, b)
            assert B.is_split()
            try:
                hs = HermForm(B, _transfer(G, B), -1)
            except Degenerate:
                continue
            spec_total += 1
            p = HermPair(hs)
            spec_ok += pr.skew_unit_class(hs) == pr.discriminant(pr.split_model(p))
    ok = hyp_ok == hyp_total and spec_ok == spec_total and spec_total >= 100
    return record(
        9, ok, f"skew-unit e1: hyperbolic {hyp_ok}/{hyp_total}, split specialization {spec_ok}/{spec_total}"
    )


def criterion_10():
    golden = 0
    for cmd, name in (("invariants", "example_invariants"), ("is-hyperbolic", "example_hyperbolic"),
                      ("oracle-check", "example_oracle")):
        doc = json.loads((DATA / f"{name}.json").read_text())
        out = cli.dumps(cli.run_command(cmd, doc))
        golden += out == (DATA / f"{name}.golden.json").read_text()
    docs = json.loads((DATA / "roundtrip_corpus.json").read_text())
    trips = 0
    for doc in docs:
        F, A, form, other = cli.parse_input(doc)
        canon = cli.emit_input(F, A, form, other)
        again = cli.parse_input(json.loads(cli.dumps(canon)))
        trips += again == (F, A, form, other) and cli.emit_input(*again) == canon
    ok = golden == 3 and trips == len(docs) and len(docs) >= 50
    return record(10, ok, f"CLI goldens {golden}/3 byte-identical, round trip {trips}/{len(docs)}")


# ---------------------------------------------------------------------------


def test_criterion_1_quaternion_formulas():
    assert criterion_1()


def test_criterion_2_unitary_formulas():
    assert criterion_2()


def test_criterion_3_hyperbolicity_biconditional():
    assert criterion_3()


def test_criterion_4_morita_invariance():
    assert criterion_4()


def test_criterion_5_pfister_chain():
    assert criterion_5()


def test_criterion_6_oracle_equivalence():
    assert criterion_6()


def test_criterion_7_hilbert_symbols():
    assert criterion_7()


@pytest.mark.xfail(
    strict=True,
    reason="e_3(-h + lam h) = rank(h).(lam) u (D); it is nonzero for odd rank, lam < 0 and D definite",
)
def test_criterion_8_relative_e3_scaling():
    assert criterion_8()


def test_criterion_9_quaternionic_pair_e1():
    assert criterion_9()


def test_criterion_10_cli_conformance():
    assert criterion_10()


if __name__ == "__main__":
    for k in range(1, 11):
        globals()[f"criterion_{k}"]()
