"""Exhaustive solvers for small instances.

Every ordering of the strings, each in either orientation, is enumerated
depth-first; overlaps come from a table filled once up front. Among the
orderings of maximum total overlap the lexicographically smallest resulting
superstring wins, which makes the result independent of enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .graph import OverlapGraph
from .preprocess import make_factor_free, make_reverse_factor_free
from .strings import StringSet

DEFAULT_LIMIT_M = 9


class OracleLimitError(ValueError):
    """The instance has more strings than the exhaustive search allows."""

    def __init__(self, m: int, limit: int):
        super().__init__(f"{m} strings exceed the exact-oracle limit of {limit} (--limit-m)")
        self.m = m
        self.limit = limit


class ArcNotRealizableError(ValueError):
    """The requested arc does not join two distinct strings of the instance."""


@njit(cache=True)
def _render(path, W, text, offs, out):
    k = 0
    m = path.shape[0]
    for i in range(m):
        v = path[i]
        cut = offs[v + 1] - offs[v]
        if i + 1 < m:
            cut -= W[v, path[i + 1]]
        for p in range(offs[v], offs[v] + cut):
            out[k] = text[p]
            k += 1
    return k


@njit(cache=True)
def _compare(path, W, text, offs, ref):
    """Sign of (string of ``path``) versus ``ref``, stopping at the first difference."""
    k = 0
    m = path.shape[0]
    for i in range(m):
        v = path[i]
        cut = offs[v + 1] - offs[v]
        if i + 1 < m:
            cut -= W[v, path[i + 1]]
        for p in range(offs[v], offs[v] + cut):
            if text[p] != ref[k]:
                return -1 if text[p] < ref[k] else 1
            k += 1
    return 0


@njit(cache=True)
def _search(W, text, offs, allow_reverse, fa, fb):
    nv = W.shape[0]
    m = nv // 2
    step = 1 if allow_reverse else 2
    # best incoming overlap of each string, over both orientations
    max_in = np.zeros(m, np.int64)
    for b in range(nv):
        if not allow_reverse and b & 1:
            continue
        for a in range(nv):
            if a >> 1 != b >> 1 and W[a, b] > max_in[b >> 1]:
                max_in[b >> 1] = W[a, b]
    path = np.empty(m, np.int64)
    acc = np.zeros(m + 1, np.int64)
    nxt = np.zeros(m + 1, np.int64)
    used = np.zeros(m, np.bool_)
    rest = max_in.sum()
    best = -1
    best_path = np.empty(m, np.int64)
    best_buf = np.empty(text.shape[0], np.uint8)
    best_len = 0
    k = 0
    while k >= 0:
        if k == m:
            ok = True
            if fa >= 0:
                ok = False
                for i in range(m - 1):
                    if path[i] == fa and path[i + 1] == fb:
                        ok = True
            total = acc[m]
            if ok and (total > best or (total == best and
                                        _compare(path, W, text, offs, best_buf) < 0)):
                best = total
                best_len = _render(path, W, text, offs, best_buf)
                best_path[:] = path
            k -= 1
            used[path[k] >> 1] = False
            rest += max_in[path[k] >> 1]
            continue
        v = nxt[k]
        if v >= nv:
            k -= 1
            if k >= 0:
                used[path[k] >> 1] = False
                rest += max_in[path[k] >> 1]
            continue
        nxt[k] = v + step
        if used[v >> 1]:
            continue
        if k > 0:
            u = path[k - 1]
            if fa >= 0 and (u == fa) != (v == fb):
                continue
            acc[k + 1] = acc[k] + W[u, v]
        else:
            if v == fb:
                continue
            acc[1] = 0
        rest -= max_in[v >> 1]
        if acc[k + 1] + rest < best:
            rest += max_in[v >> 1]
            continue
        path[k] = v
        used[v >> 1] = True
        k += 1
        nxt[k] = 0
    return best, best_path, best_buf[:best_len]


@dataclass(frozen=True)
class ExactResult:
    """An optimal superstring and the ordering that produces it.

    ``witness`` lists ``(string index, reversed)`` into ``strings``, the
    normalized instance the search ran on.
    """

    best_string: bytes
    opt_overlap: int
    witness: list[tuple[int, bool]]
    strings: tuple[bytes, ...]

    @property
    def length(self) -> int:
        return len(self.best_string)

    @property
    def n(self) -> int:
        return sum(map(len, self.strings))


def overlap_table(graph: OverlapGraph) -> np.ndarray:
    nv = graph.num_vertices
    W = np.zeros((nv, nv), np.int64)
    for a in range(nv):
        for b in range(nv):
            if a >> 1 != b >> 1:
                W[a, b] = graph.weight(a, b)
    return W


def _solve(kept: StringSet, limit_m: int, allow_reverse: bool, arcs=((-1, -1),)) -> ExactResult:
    if kept.m > limit_m:
        raise OracleLimitError(kept.m, limit_m)
    graph = OverlapGraph(kept)
    W = overlap_table(graph)
    text = np.frombuffer(b"".join(graph.strings), np.uint8)
    offs = np.zeros(graph.num_vertices + 1, np.int64)
    np.cumsum([len(x) for x in graph.strings], out=offs[1:])
    best = None
    for fa, fb in arcs:
        total, path, buf = _search(W, text, offs, allow_reverse, fa, fb)
        if total < 0:
            continue
        cand = (-int(total), bytes(buf), path.tolist())
        if best is None or cand < best:
            best = cand
    if best is None:
        raise ArcNotRealizableError("no ordering uses the requested arc")
    neg, s, path = best
    return ExactResult(s, -neg, [(v >> 1, bool(v & 1)) for v in path], kept.members)


def _as_set(s) -> StringSet:
    return s if isinstance(s, StringSet) else StringSet(s)


def exact_scsr(s, limit_m: int = DEFAULT_LIMIT_M) -> ExactResult:
    """Shortest common superstring with reversals, by exhaustive search."""
    kept = make_reverse_factor_free(_as_set(s)).kept
    return _solve(kept, limit_m, True)


def exact_scsr_through_arc(s, u: bytes, v: bytes, limit_m: int = DEFAULT_LIMIT_M) -> ExactResult:
    """Best ordering in which ``v`` directly follows ``u``, both as given."""
    kept = make_reverse_factor_free(_as_set(s)).kept
    if kept.m > limit_m:
        raise OracleLimitError(kept.m, limit_m)
    strings = OverlapGraph(kept).strings
    us = [i for i, x in enumerate(strings) if x == u]
    vs = [i for i, x in enumerate(strings) if x == v]
    if not us or not vs:
        raise ArcNotRealizableError(f"{u!r} or {v!r} is not a normalized string or reversal")
    if u == v or u == v[::-1]:
        raise ArcNotRealizableError("an arc must join two different strings")
    return _solve(kept, limit_m, True, [(a, b) for a in us for b in vs])


def exact_scs(s, limit_m: int = DEFAULT_LIMIT_M) -> ExactResult:
    """Classic shortest common superstring (no reversals), by exhaustive search."""
    kept = make_factor_free(_as_set(s))
    return _solve(kept, limit_m, False)


def decide_scsr(s, ell: int, limit_m: int = DEFAULT_LIMIT_M) -> bool:
    return exact_scsr(s, limit_m).length <= ell


def decide_scs(s, ell: int, limit_m: int = DEFAULT_LIMIT_M) -> bool:
    return exact_scs(s, limit_m).length <= ell
