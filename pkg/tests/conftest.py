"""Independent brute-force references shared by the tests.

Nothing here imports the package: these are the oracles the package is
checked against.
"""

import itertools

import numpy as np
import pytest


def bf_overlap(u: bytes, v: bytes) -> int:
    for k in range(min(len(u), len(v)), 0, -1):
        if u[-k:] == v[:k]:
            return k
    return 0


def bf_merge(u: bytes, v: bytes) -> bytes:
    return u + v[bf_overlap(u, v):]


def bf_fold(order) -> bytes:
    cur = b""
    for s in order:
        if s not in cur:
            cur = bf_merge(cur, s) if cur else s
    return cur


def bf_scsr_length(strings, reversals: bool = True) -> int:
    """Shortest superstring (with reversals) of an arbitrary, unnormalized set."""
    xs = sorted(set(strings))
    best = None
    for perm in itertools.permutations(xs):
        flips = itertools.product((False, True), repeat=len(xs)) if reversals else [(False,) * len(xs)]
        for flip in flips:
            cand = len(bf_fold([s[::-1] if f else s for s, f in zip(perm, flip)]))
            if best is None or cand < best:
                best = cand
    return best


def bf_reverse_factor_free(strings) -> list[bytes]:
    """Quadratic normalization: drop factors of others or their reversals, one per reversal pair."""
    xs = sorted(set(strings))
    keep = []
    for u in xs:
        if any(v != u and v != u[::-1] and (u in v or u in v[::-1]) for v in xs):
            continue
        rep = min(u, u[::-1])
        if rep not in keep:
            keep.append(rep)
    return sorted(keep)


def rand_strings(rng, alphabet_size=(2, 4), max_count=7, max_total=40, min_count=1):
    a = int(rng.integers(alphabet_size[0], alphabet_size[1] + 1))
    count = int(rng.integers(min_count, max_count + 1))
    cap = max(1, max_total // count)
    sigma = b"abcd"[:a]
    return [bytes(sigma[int(i)] for i in rng.integers(0, a, size=int(rng.integers(1, cap + 1))))
            for _ in range(count)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE: dict[int, str] = {}


def report(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
