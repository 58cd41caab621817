"""Acceptance criteria 1-8, one PASS/FAIL line each in the terminal summary."""
import functools
import itertools
import random
import time
from math import factorial

import pytest

from rootmonodromy.braid import TAU, BraidWord, random_word, relation_pairs
from rootmonodromy.galois import certify_trinomial, numeric_group, predict
from rootmonodromy.permgroup import (PermGroup, WreathGround, effective_g, in_wreath, ind_sigma,
                                     wreath_order, wreath_subgroup_generators)
from rootmonodromy.reducible import (kernel_bruteforce, normalize_pair, numeric_check_reducible,
                                     pair_invariants, predicted_galois_reducible)
from rootmonodromy.support import SupportSet, invariants
from rootmonodromy.trinomial import TrinomialModel, to_type1

MODELS = [(1, 2, 1, 1), (2, 3, 2, 1), (2, 3, 1, 1), (1, 3, 1, 2), (2, 5, 4, 2)]


@functools.lru_cache(maxsize=None)
def certificate(mnab):
    t0 = time.perf_counter()
    cert = certify_trinomial(TrinomialModel(*mnab))
    return cert, time.perf_counter() - t0


def mirror(w: BraidWord) -> BraidWord:
    """Swap every crossing for its mirror; tau is untouched."""
    return BraidWord(w.N, tuple((g, e if g == TAU else -e) for g, e in w.letters))


# 1 -------------------------------------------------------------------------

def test_criterion_1_invariants(record):
    s = SupportSet.of([(0, 0), (2, 4), (5, 2)])
    best = float("inf")
    for _ in range(20):
        t0 = time.perf_counter()
        inv = invariants(s)
        T, _ = to_type1(s)
        best = min(best, time.perf_counter() - t0)
    ok = (inv.N, inv.d, inv.sharp, inv.theta, T.delta) == (5, 1, True, 2, 16) and best < 1e-3
    record(1, ok, f"N={inv.N} d={inv.d} sharp={inv.sharp} theta={inv.theta} delta={T.delta} "
                  f"in {best * 1e6:.0f}us")
    assert ok


# 2 -------------------------------------------------------------------------

def _enumerated_orders(N: int, d: int) -> dict[int, int]:
    """Count of d-equivariant permutations of N points by their ind, by brute force."""
    w = WreathGround(N, d)
    counts: dict[int, int] = {}
    for s in itertools.permutations(range(N)):
        if in_wreath(s, w):
            k = ind_sigma(s, w)
            counts[k] = counts.get(k, 0) + 1
    return counts


def test_criterion_2_wreath_order_law(record):
    t0 = time.perf_counter()
    bad = []
    cases = 0
    for N in range(1, 13):
        for d in (d for d in range(1, N + 1) if N % d == 0):
            counts = _enumerated_orders(N, d) if N <= 8 else None
            w = WreathGround(N, d)
            for g in (g for g in range(1, d + 1) if d % g == 0):
                cases += 1
                gens = wreath_subgroup_generators(N, d, g)
                G = PermGroup(gens, N)
                law = d ** (N // d - 1) * (d // g) * factorial(N // d)
                if G.order() != law or wreath_order(N, d, g) != law:
                    bad.append((N, d, g, G.order(), law))
                if counts is not None:
                    # generators satisfy the constraint and orders agree, so the sets agree
                    brute = sum(c for k, c in counts.items() if k % g == 0)
                    inside = all(in_wreath(p, w) and ind_sigma(p, w) % g == 0 for p in gens)
                    if brute != law or not inside:
                        bad.append((N, d, g, "enumeration", brute))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    record(2, ok, f"{cases} (N,d,g) cases, {elapsed:.1f}s")
    assert ok, bad


# 3 -------------------------------------------------------------------------

def test_criterion_3_braid_relations(record):
    t0 = time.perf_counter()
    failed = [(N, name) for N in range(2, 9) for u, v, name in relation_pairs(N) if not u.equals(v)]
    n_rel = sum(len(relation_pairs(N)) for N in range(2, 9))
    rng = random.Random(20261016)
    homo_bad = 0
    for _ in range(1000):
        N = rng.randint(1, 8)
        u, v = random_word(N, rng.randint(0, 12), rng), random_word(N, rng.randint(0, 12), rng)
        uv = u * v
        if uv.ind() != u.ind() + v.ind() or uv.permutation() != u.permutation() * v.permutation():
            homo_bad += 1
    elapsed = time.perf_counter() - t0
    ok = not failed and homo_bad == 0 and elapsed < 10
    record(3, ok, f"{n_rel} relations, 1000 word pairs, {elapsed:.1f}s")
    assert ok, (failed, homo_bad)


# 4 -------------------------------------------------------------------------

@pytest.mark.parametrize("mnab", MODELS, ids=lambda m: "m{}n{}a{}b{}".format(*m))
def test_criterion_4_trinomial_certification(mnab):
    cert, elapsed = certificate(mnab)
    T = TrinomialModel(*mnab)
    assert cert.bifurcation_error <= 1e-9
    assert cert.tracked_words[0].equals(BraidWord.tau(T.n, T.b))
    assert all(cert.report.words_equal)
    assert cert.report.groups_equal
    assert elapsed < 120


def test_criterion_4_summary(record):
    straight, mirrored, worst, slowest = [], [], 0.0, 0.0
    for mnab in MODELS:
        cert, elapsed = certificate(mnab)
        T = TrinomialModel(*mnab)
        worst = max(worst, cert.bifurcation_error)
        slowest = max(slowest, elapsed)
        ell0 = cert.tracked_words[0].equals(BraidWord.tau(T.n, T.b))
        base = cert.bifurcation_error <= 1e-9 and ell0 and cert.report.groups_equal
        straight.append(base and all(cert.report.words_equal))
        mirrored.append(base and all(mirror(w).equals(p)
                                     for w, p in zip(cert.tracked_words, cert.predicted_words)))
    # exactly one global orientation may explain every model
    orientation = "as defined" if all(straight) else ("mirrored" if all(mirrored) else "none")
    ok = (all(straight) != all(mirrored)) and slowest < 120
    record(4, ok, f"5 models, orientation {orientation} (as defined {sum(straight)}/5, mirrored "
                  f"{sum(mirrored)}/5), max rel. error {worst:.1e}, slowest {slowest:.1f}s")
    assert ok


# 5 -------------------------------------------------------------------------

LITERAL_5 = [(0, 0), (2, 1), (4, 2)]        # 1 + t x^2 + t^2 x^4
SUBSTITUTE_5 = [(0, 0), (2, 0), (4, 2)]     # 1 + x^2 + t^2 x^4: N=4, d=2, theta=2, off the line


@pytest.mark.xfail(strict=True, reason="the literal support is collinear: its group is the order-2 line group")
def test_criterion_5_literal_support_has_order_4():
    G, _, _ = numeric_group(SupportSet.of(LITERAL_5), seed=0)
    assert G.order() == 4


def test_criterion_5_obstruction(record):
    lit = SupportSet.of(LITERAL_5)
    G_lit, _, _ = numeric_group(lit, seed=0)
    s = SupportSet.of(SUBSTITUTE_5)
    inv = invariants(s)
    G, _, _ = numeric_group(s, seed=0)
    full = wreath_order(4, 2, 1)
    ok = ((inv.N, inv.d, inv.theta, effective_g(inv.d, inv.theta)) == (4, 2, 2, 2)
          and G.order() == 4 < full and G == predict(s).galois_group)
    record(5, ok, f"literal support is collinear, order {G_lit.order()} (XFAIL); substitute "
                  f"{SUBSTITUTE_5} order {G.order()} < {full}", status="PASS (substitute)" if ok else None)
    assert ok


# 6 -------------------------------------------------------------------------

def test_criterion_6_line(record):
    s = SupportSet.of([(0, 0), (1, 2)])
    G, tracked, _ = numeric_group(s, seed=0)
    N = invariants(s).N
    word = tracked[0].word
    ok = G.order() == 1 and len(tracked) == 1 and word.equals(BraidWord.tau(N, 2))
    record(6, ok, f"group order {G.order()}, loop around 0 gives {word}")
    assert ok


# 7 -------------------------------------------------------------------------

PAIRS_7 = {
    "trivial S": ([(0, 0), (1, 1), (2, 0)], [(0, 0), (0, 1), (0, 2)]),
    "S=Z/2 sharp": ([(0, 0), (2, 0), (4, 1)], [(0, 0), (0, 1), (0, 2)]),
    "non-sharp kappa=2": ([(0, 0), (0, 2), (2, 1), (2, 3)], [(0, 0), (0, 2)]),
}


def test_criterion_7_reducible_pairs(record):
    t0 = time.perf_counter()
    rows, ok = [], True
    for name, (A1, A2) in PAIRS_7.items():
        P = normalize_pair(A1, A2)
        inv = pair_invariants(P)
        shape = {"trivial S": inv.order_S == 1,
                 "S=Z/2 sharp": inv.S_factors == (2,) and inv.sharp,
                 "non-sharp kappa=2": not inv.sharp and inv.kappa == 2}[name]
        pred = predicted_galois_reducible(P)
        K, _ = kernel_bruteforce(P)
        rep = numeric_check_reducible(P, seed=1, prediction=pred)
        good = shape and P.N <= 8 and K == pred.kernel and rep.verdict
        ok = ok and good
        rows.append(f"{name}: N={P.N} |K|={K.order()} |G|={rep.numeric_order} {'ok' if good else 'BAD'}")
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 300
    record(7, ok, "; ".join(rows) + f"; {elapsed:.1f}s")
    assert ok


# 8 -------------------------------------------------------------------------

def test_criterion_8_fiber_data(record):
    cert, _ = certificate((2, 3, 2, 1))
    T = TrinomialModel(2, 3, 2, 1)
    hist = cert.fiber_histogram
    ok = sum(hist.values()) == T.delta == 4 and hist == cert.tracked_histogram
    record(8, ok, f"predicted {hist}, tracked {cert.tracked_histogram}")
    assert ok
