"""End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line; the lines are also collected in
the terminal summary.
"""

import itertools
import statistics
import time

import numpy as np
import pytest

from conftest import bf_overlap, bf_scsr_length, rand_strings, report
from scsr.cli import bench_rows, compression_ratio
from scsr.exact import exact_scs, exact_scsr, exact_scsr_through_arc
from scsr.greedy import (ADVERSARIAL, CANONICAL, SEEDED_RANDOM, TieBreakPolicy, greedy_r_linear,
                         greedy_r_naive, verify_superstring_r)
from scsr.instances import tight_instance
from scsr.preprocess import is_reverse_factor_free, make_reverse_factor_free
from scsr.reduction import check_reduction_roundtrip, morphism_g, morphism_h
from scsr.strings import overlap

WORKED = [b"aabb", b"aaac", b"abbb"]


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    # load compiled kernels so that timings measure the algorithms
    greedy_r_linear([b"ab", b"bc", b"ca"])
    exact_scsr([b"ab", b"bc"])
    exact_scs([b"ab", b"bc"])


@pytest.fixture(scope="module")
def random_corpus():
    rng = np.random.default_rng(20240601)
    return [rand_strings(rng, alphabet_size=(2, 4), max_count=7, max_total=40) for _ in range(10_000)]


def test_criterion_1_worked_example():
    t0 = time.perf_counter()
    lin = greedy_r_linear(WORKED)
    naive = greedy_r_naive(WORKED)
    opt = exact_scsr(WORKED)
    elapsed = time.perf_counter() - t0
    ok = (len(lin.final) == len(naive.final) == 7 and verify_superstring_r(lin.final, WORKED)
          and verify_superstring_r(naive.final, WORKED) and opt.length == 7 and elapsed < 1.0)
    report(1, ok, f"greedy length {len(lin.final)}, optimum {opt.length}, {elapsed:.3f}s")
    assert ok


def test_criterion_2_tight_family():
    t0 = time.perf_counter()
    bad = []
    for h in range(1, 21):
        s = tight_instance(h)
        opt = exact_scsr(s).opt_overlap
        adv = greedy_r_linear(s, TieBreakPolicy(ADVERSARIAL))
        if adv.total_overlap != h or opt != 2 * h or compression_ratio(adv.total_overlap, opt) != 0.5:
            bad.append(("adversarial", h, adv.total_overlap, opt))
        policies = [TieBreakPolicy(CANONICAL)] + [TieBreakPolicy(SEEDED_RANDOM, k) for k in range(5)]
        for pol in policies:
            for engine in (greedy_r_linear, greedy_r_naive):
                g = engine(s, pol).total_overlap
                if compression_ratio(g, opt) < 0.5:
                    bad.append((pol.mode, h, g, opt))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 5.0
    report(2, ok, f"h=1..20, {len(bad)} violations, {elapsed:.2f}s")
    assert ok, bad[:5]


def test_criterion_3_and_4_sandwich_and_engine_equivalence(random_corpus):
    t0 = time.perf_counter()
    sandwich, mismatch, distinct, distinct_mismatch = [], [], 0, 0
    for xs in random_corpus:
        opt = exact_scsr(xs).opt_overlap
        lin = greedy_r_linear(xs)
        naive = greedy_r_naive(xs)
        for t in (lin, naive):
            g = t.total_overlap
            if not (opt >= g and 2 * g >= opt) or not verify_superstring_r(t.final, xs):
                sandwich.append((xs, t.engine, g, opt))
        if lin.total_overlap != naive.total_overlap:
            mismatch.append(xs)
        if len(set(lin.overlaps)) == len(lin.overlaps):
            distinct += 1
            if lin.final != naive.final:
                distinct_mismatch += 1
    elapsed = time.perf_counter() - t0
    ok3 = not sandwich and elapsed < 300
    ok4 = not mismatch and not distinct_mismatch
    report(3, ok3, f"{len(random_corpus)} instances, {len(sandwich)} violations, {elapsed:.1f}s")
    report(4, ok4, f"{len(mismatch)} overlap mismatches, {distinct_mismatch} string mismatches "
                   f"on {distinct} all-distinct-weight instances")
    assert ok3 and ok4, (sandwich[:3], mismatch[:3])


def test_criterion_5_preprocessing():
    norm = make_reverse_factor_free([b"ab", b"aaa", b"aab", b"baa"])
    example_ok = list(norm.kept) == [b"aaa", b"aab"]
    rng = np.random.default_rng(55)
    bad = []
    for _ in range(1000):
        xs = rand_strings(rng, alphabet_size=(2, 4), max_count=5, max_total=20)
        kept = make_reverse_factor_free(xs).kept
        if not is_reverse_factor_free(kept):
            bad.append(("not reverse-factor-free", xs))
        elif bf_scsr_length(xs) != exact_scsr(kept).length:
            bad.append(("optimum changed", xs))
    ok = example_ok and not bad
    report(5, ok, f"example {'ok' if example_ok else 'wrong'}, 1000 sets, {len(bad)} violations")
    assert ok, bad[:3]


def test_criterion_6_debug_invariants():
    rng = np.random.default_rng(66)
    bad = []
    for i in range(1000):
        xs = rand_strings(rng, max_count=8, max_total=48)
        pol = TieBreakPolicy(SEEDED_RANDOM, i) if i % 2 else TieBreakPolicy()
        for engine in (greedy_r_naive, greedy_r_linear):
            try:
                engine(xs, pol, debug=True)
            except AssertionError as exc:
                bad.append((xs, engine.__name__, str(exc)))
    report(6, not bad, f"1000 debug runs per engine, {len(bad)} violations")
    assert not bad, bad[:3]


def test_criterion_7_exchange_and_forced_arc_bounds():
    rng = np.random.default_rng(77)
    tuples = violations4 = 0
    while tuples < 10_000:
        x1, x2, x3, x4 = (bytes(rng.choice(list(b"ab"), size=int(rng.integers(1, 7)))) for _ in range(4))
        if max(overlap(x1, x4), overlap(x2, x3)) <= overlap(x1, x3):
            tuples += 1
            if overlap(x1, x4) + overlap(x2, x3) > overlap(x1, x3) + overlap(x2, x4):
                violations4 += 1
    violations5 = checked = 0
    while checked < 1000:
        xs = rand_strings(rng, alphabet_size=(2, 3), max_count=6, max_total=30, min_count=2)
        kept = make_reverse_factor_free(xs).kept
        if kept.m < 2:
            continue
        closure = [x for k in kept for x in {k, k[::-1]}]
        ov, u, v = max((bf_overlap(u, v), u, v) for u, v in itertools.permutations(closure, 2)
                       if u != v[::-1])
        opt = exact_scsr(kept).opt_overlap
        forced = exact_scsr_through_arc(kept, u, v).opt_overlap
        checked += 1
        if forced < opt - ov:
            violations5 += 1
    ok = violations4 == 0 and violations5 == 0
    report(7, ok, f"four-string inequality {violations4}/10000 violations, "
                  f"forced-arc bound {violations5}/1000 violations")
    assert ok


def test_criterion_8_reduction():
    rng = np.random.default_rng(88)
    obs = 0
    for _ in range(10_000):
        u, v = (bytes(rng.choice(list(b"abc"), size=int(rng.integers(1, 9)))) for _ in range(2))
        k = int(rng.integers(1, 5))
        hu, hv = morphism_h(morphism_g(u, k)), morphism_h(morphism_g(v, k))
        if bf_overlap(morphism_h(u), morphism_h(v)[::-1]) > 1:
            obs += 1
        if len(hu) != 3 * k * len(u) or bf_overlap(hu, hv) != 3 * k * bf_overlap(u, v):
            obs += 1
    disagree = decisions = 0
    for _ in range(500):
        xs = rand_strings(rng, alphabet_size=(2, 3), max_count=4, max_total=12)
        n = sum(len(x) for x in set(xs))
        for ell in range(1, n + 1):
            a, b = check_reduction_roundtrip(xs, ell)
            decisions += 1
            disagree += a != b
    ok = obs == 0 and disagree == 0
    report(8, ok, f"{obs} morphism property violations on 10000 pairs, "
                  f"{disagree}/{decisions} roundtrip disagreements on 500 instances")
    assert ok


def test_criterion_9_linear_scaling():
    sizes = [100_000, 200_000, 400_000, 800_000]
    rows = list(bench_rows(sizes, seed=0))
    times = [r[2] / 1e9 for r in rows]
    ratios = [b / a for a, b in zip(times, times[1:])]
    ok = all(r <= 2.6 for r in ratios) and times[-1] < 2.0
    report(9, ok, "medians " + ", ".join(f"{t:.3f}s" for t in times)
           + "; ratios " + ", ".join(f"{r:.2f}" for r in ratios))
    assert ok


def test_criterion_10_reversal_advantage():
    bad = []
    for h in range(1, 11):
        s = [b"a" + b"b" * h, b"c" + b"b" * h]
        with_r, without = exact_scsr(s).length, exact_scs(s).length
        if (with_r, without) != (h + 2, 2 * h + 2):
            bad.append((h, with_r, without))
    report(10, not bad, f"h=1..10, {len(bad)} violations")
    assert not bad
