"""Greedy approximation for the shortest common superstring with reversals.

Two engines share one contract:

* ``greedy_r_naive`` works on the strings themselves. Each round it scores
  every ordered pair of current strings (and their reversals), merges the
  pair of largest overlap and replaces both strings (with their reversals)
  by the merge.
* ``greedy_r_linear`` works on the overlap graph instead. It walks the
  states of the Aho-Corasick automaton of all strings and their reversals by
  decreasing depth; at a state spelling ``w`` every (suffix-list vertex,
  prefix-list vertex) pair is an arc of weight at least ``|w|``. It inserts
  arcs, always paired with their reversed twins, whenever they keep the
  arc set a union of disjoint paths.

Ties are broken by a total order on graph vertices supplied by the policy:
among arcs of maximum weight the engine takes the one whose (tail, head)
ranks are smallest. The naive engine keys a merge of ``u`` and ``v`` by the
last vertex of ``u`` and the first vertex of ``v``, so under the same policy
both engines make the same choices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np
from numba import njit

from .automaton import build_automaton, compute_state_sets, reverse_bfs_states
from .graph import Arc, OverlapGraph, PathCollection, mate
from .preprocess import NormalizedInput, is_reverse_factor_free, make_reverse_factor_free
from .strings import StringSet, merge, overlap

CANONICAL = "canonical"
ADVERSARIAL = "adversarial-first-pair"
SEEDED_RANDOM = "seeded-random"
POLICY_MODES = (CANONICAL, ADVERSARIAL, SEEDED_RANDOM)


class EmptyInputError(ValueError):
    """The greedy engines need at least one string."""


class InvariantViolation(AssertionError):
    """A debug-mode check on the greedy state failed."""


@dataclass(frozen=True)
class TieBreakPolicy:
    """How to choose among arcs of equal maximum weight.

    ``canonical`` orders vertices by their strings (vertex id on equal
    strings, which only happens for palindromes). ``seeded-random`` orders
    them by a seeded permutation. ``adversarial-first-pair`` reverses the
    canonical order and, for the first merge, takes the maximum-overlap pair
    after which the greedy ends with the least total overlap.
    """

    mode: str = CANONICAL
    seed: int = 0

    def __post_init__(self):
        if self.mode not in POLICY_MODES:
            raise ValueError(f"unknown tie-break mode {self.mode!r}")

    def vertex_ranks(self, graph: OverlapGraph) -> np.ndarray:
        nv = graph.num_vertices
        if self.mode == SEEDED_RANDOM:
            order = np.random.default_rng(self.seed).permutation(nv)
        else:
            order = sorted(range(nv), key=lambda v: (graph.strings[v], v))
            if self.mode == ADVERSARIAL:
                order.reverse()
        rank = np.empty(nv, np.int64)
        rank[np.asarray(order, np.int64)] = np.arange(nv)
        return rank


class Step(NamedTuple):
    left: bytes
    right: bytes
    overlap: int
    arc: Arc


@dataclass
class GreedyTrace:
    steps: list[Step]
    final: bytes
    normalized: NormalizedInput
    engine: str
    paths: PathCollection | None = field(default=None, repr=False)

    @property
    def total_overlap(self) -> int:
        return sum(st.overlap for st in self.steps)

    @property
    def overlaps(self) -> list[int]:
        return [st.overlap for st in self.steps]

    @property
    def n_norm(self) -> int:
        return self.normalized.n


def verify_superstring_r(candidate: bytes, s: Iterable[bytes]) -> bool:
    return all(u in candidate or u[::-1] in candidate for u in s)


def _as_set(s) -> StringSet:
    s = s if isinstance(s, StringSet) else StringSet(s)
    if not len(s):
        raise EmptyInputError("greedy needs a nonempty set of strings")
    return s


def _finish(pc: PathCollection) -> bytes:
    start = pc.path_starts()[0]
    x = pc.path_string(start)
    return min(x, x[::-1])


# ---------------------------------------------------------------------------
# naive engine


class _Record(NamedTuple):
    string: bytes
    first: int
    last: int

    def reversed(self) -> "_Record":
        return _Record(self.string[::-1], mate(self.last), mate(self.first))

    @property
    def pair_key(self) -> int:
        return min(self.first, mate(self.last))


def _naive_candidates(working, rank, ov):
    closure = []
    for r in working.values():
        closure.append(r)
        closure.append(r.reversed())
    best_w = -1
    cands = []
    for x in closure:
        for y in closure:
            if y.first == x.first or y.first == mate(x.last):
                continue
            w = ov(x.string, y.string)
            if w > best_w:
                best_w, cands = w, [(x, y)]
            elif w == best_w:
                cands.append((x, y))
    cands.sort(key=lambda xy: (rank[xy[0].last], rank[xy[1].first]))
    return best_w, cands, closure


def _naive_run(graph: OverlapGraph, rank, forced=None, debug=False):
    pc = PathCollection(graph)
    working = {}
    for v in range(0, graph.num_vertices, 2):
        working[v] = _Record(graph.strings[v], v, v)
    cache: dict[tuple[bytes, bytes], int] = {}

    def ov(u, v):
        k = cache.get((u, v))
        if k is None:
            k = cache[u, v] = overlap(u, v)
        return k

    steps = []
    while len(working) > 1:
        w, cands, closure = _naive_candidates(working, rank, ov)
        if forced is not None and not steps:
            x, y = forced
        else:
            x, y = cands[0]
        merged = merge(x.string, y.string)
        if debug:
            _check_stability(closure, x.string, y.string, merged, ov)
            if graph.weight(x.last, y.first) != w:
                raise InvariantViolation("path overlap differs from end-vertex overlap")
        arc = Arc(x.last, y.first, w)
        pc.add_arc_pair(arc)
        del working[x.pair_key], working[y.pair_key]
        r = _Record(merged, x.first, y.last)
        working[r.pair_key] = r
        steps.append(Step(graph.strings[x.last], graph.strings[y.first], w, arc))
        if debug:
            if not is_reverse_factor_free([r.string for r in working.values()]):
                raise InvariantViolation("working set lost reverse-factor-freeness")
            if pc.path_string(r.first) != merged:
                raise InvariantViolation("path string disagrees with merged string")
    if debug:
        pc.check_invariants()
    (last,) = working.values()
    return steps, min(last.string, last.string[::-1]), pc


def _check_stability(closure, u, v, merged, ov):
    for r in closure:
        w = r.string
        if overlap(w, merged) != ov(w, u) or overlap(merged, w) != ov(v, w):
            raise InvariantViolation(f"merge of {u!r} and {v!r} changed overlaps with {w!r}")


def greedy_r_naive(s, policy: TieBreakPolicy = TieBreakPolicy(), debug: bool = False) -> GreedyTrace:
    s = _as_set(s)
    norm = make_reverse_factor_free(s)
    graph = OverlapGraph(norm.kept)
    if norm.m == 1:
        return GreedyTrace([], norm.kept.members[0], norm, "naive", PathCollection(graph))
    rank = policy.vertex_ranks(graph)
    forced = None
    if policy.mode == ADVERSARIAL:
        working = {v: _Record(graph.strings[v], v, v) for v in range(0, graph.num_vertices, 2)}
        _, cands, _ = _naive_candidates(working, rank, overlap)
        forced = min(cands, key=lambda xy: sum(
            st.overlap for st in _naive_run(graph, rank, forced=xy)[0]))
    steps, final, pc = _naive_run(graph, rank, forced, debug)
    return GreedyTrace(steps, final, norm, "naive", pc)


# ---------------------------------------------------------------------------
# linear engine


@njit(cache=True)
def _best_arc(q, pref_start, pref_items, suf_start, pp, sp, suf_items, succ, pred, other):
    """Smallest-rank valid arc at state ``q``, advancing the list cursors.

    Cursors only move past entries that can never again be part of a valid
    arc: suffix-list vertices that stopped ending a path or that have no
    valid partner left, and prefix-list vertices that stopped starting one.
    """
    pend = pref_start[q + 1]
    send = suf_start[q + 1]
    while sp[q] < send:
        a = suf_items[sp[q]]
        if succ[a] != -1:
            sp[q] += 1
            continue
        while pp[q] < pend and pred[pref_items[pp[q]]] != -1:
            pp[q] += 1
        j = pp[q]
        seen = 0
        while j < pend and seen < 3:
            b = pref_items[j]
            if pred[b] != -1:
                # drop a dead entry from the middle, keeping the live ones in order
                for k in range(j, pp[q], -1):
                    pref_items[k] = pref_items[k - 1]
                pref_items[pp[q]] = b
                pp[q] += 1
                j += 1
                continue
            seen += 1
            if b != (a ^ 1) and b != other[a]:
                return a, b
            j += 1
        sp[q] += 1
    return -1, -1


@njit(cache=True)
def _commit(a, b, w, succ, pred, wout, other):
    start = other[a]
    end = other[b]
    succ[a] = b
    pred[b] = a
    wout[a] = w
    other[start] = end
    other[end] = start
    ra = b ^ 1
    rb = a ^ 1
    succ[ra] = rb
    pred[rb] = ra
    wout[ra] = w
    other[end ^ 1] = start ^ 1
    other[start ^ 1] = end ^ 1


@njit(cache=True)
def _heap_push(keys, vals, size, key, val):
    i = size
    keys[i] = key
    vals[i] = val
    while i > 0:
        p = (i - 1) >> 1
        if keys[p] <= keys[i]:
            break
        keys[p], keys[i] = keys[i], keys[p]
        vals[p], vals[i] = vals[i], vals[p]
        i = p
    return size + 1


@njit(cache=True)
def _heap_pop(keys, vals, size):
    key = keys[0]
    val = vals[0]
    size -= 1
    keys[0] = keys[size]
    vals[0] = vals[size]
    i = 0
    while True:
        l = 2 * i + 1
        if l >= size:
            break
        c = l
        if l + 1 < size and keys[l + 1] < keys[l]:
            c = l + 1
        if keys[i] <= keys[c]:
            break
        keys[c], keys[i] = keys[i], keys[c]
        vals[c], vals[i] = vals[i], vals[c]
        i = c
    return key, val, size


@njit(cache=True)
def _greedy_scan(states, depth, pref_start, pref_items, suf_start, suf_items, rank,
                 forced_a, forced_b, forced_w):
    nv = rank.shape[0]
    merges = nv // 2 - 1
    succ = np.full(nv, -1, np.int64)
    pred = np.full(nv, -1, np.int64)
    wout = np.zeros(nv, np.int64)
    other = np.arange(nv)
    out_a = np.empty(merges, np.int64)
    out_b = np.empty(merges, np.int64)
    out_w = np.empty(merges, np.int64)
    done = 0
    if forced_a >= 0 and merges > 0:
        _commit(forced_a, forced_b, forced_w, succ, pred, wout, other)
        out_a[0], out_b[0], out_w[0] = forced_a, forced_b, forced_w
        done = 1
    pp = pref_start[:-1].copy()
    sp = suf_start[:-1].copy()
    ns = states.shape[0]
    hkeys = np.empty(ns, np.int64)
    hvals = np.empty(ns, np.int64)
    i = 0
    while i < ns and done < merges:
        d = depth[states[i]]
        j = i
        while j < ns and depth[states[j]] == d:
            j += 1
        size = 0
        for k in range(i, j):
            q = states[k]
            a, b = _best_arc(q, pref_start, pref_items, suf_start, pp, sp, suf_items,
                             succ, pred, other)
            if a >= 0:
                size = _heap_push(hkeys, hvals, size, rank[a] * nv + rank[b], q)
        while size > 0 and done < merges:
            key, q, size = _heap_pop(hkeys, hvals, size)
            a, b = _best_arc(q, pref_start, pref_items, suf_start, pp, sp, suf_items,
                             succ, pred, other)
            if a < 0:
                continue
            cur = rank[a] * nv + rank[b]
            if cur != key:
                size = _heap_push(hkeys, hvals, size, cur, q)
                continue
            _commit(a, b, d, succ, pred, wout, other)
            out_a[done], out_b[done], out_w[done] = a, b, d
            done += 1
            a, b = _best_arc(q, pref_start, pref_items, suf_start, pp, sp, suf_items,
                             succ, pred, other)
            if a >= 0:
                size = _heap_push(hkeys, hvals, size, rank[a] * nv + rank[b], q)
        i = j
    return succ, pred, wout, other, out_a[:done], out_b[:done], out_w[:done]


class _LinearSetup(NamedTuple):
    graph: OverlapGraph
    rank: np.ndarray
    states: np.ndarray
    depth: np.ndarray
    sets: object


def _linear_setup(norm: NormalizedInput, policy: TieBreakPolicy) -> _LinearSetup:
    graph = OverlapGraph(norm.kept)
    rank = policy.vertex_ranks(graph)
    aut = norm.automaton or build_automaton(set(graph.strings))
    order = np.argsort(rank)
    sets = compute_state_sets(aut, [(int(v), graph.strings[v]) for v in order], prune=True)
    states = reverse_bfs_states(aut)
    # a state with an empty list can never yield an arc
    live = (np.diff(sets.suf_start) > 0) & (np.diff(sets.pref_start) > 0)
    return _LinearSetup(graph, rank, states[live[states]], aut.depth, sets)


def _linear_run(setup: _LinearSetup, forced: Arc | None = None):
    sets = setup.sets
    fa, fb, fw = forced if forced is not None else (-1, -1, 0)
    succ, pred, wout, other, out_a, out_b, out_w = _greedy_scan(
        setup.states, setup.depth, sets.pref_start, sets.pref_items.copy(),
        sets.suf_start, sets.suf_items, setup.rank, fa, fb, fw)
    pc = PathCollection.from_arrays(setup.graph, succ, pred, wout, other)
    strings = setup.graph.strings
    steps = [Step(strings[a], strings[b], w, Arc(a, b, w))
             for a, b, w in zip(out_a.tolist(), out_b.tolist(), out_w.tolist())]
    return steps, pc


def first_step_candidates(setup: _LinearSetup) -> list[Arc]:
    """All arcs of maximum weight joining two different strings."""
    sets, depth = setup.sets, setup.depth
    found: list[Arc] = []
    level = None
    for q in setup.states.tolist():
        d = int(depth[q])
        if level is not None and d < level:
            break
        for a in sets.suf_set(q):
            for b in sets.pref_set(q):
                if b != a and b != mate(a):
                    found.append(Arc(a, b, d))
                    level = d
    rank = setup.rank
    found.sort(key=lambda e: (rank[e.src], rank[e.dst]))
    return found


def greedy_r_linear(s, policy: TieBreakPolicy = TieBreakPolicy(), debug: bool = False) -> GreedyTrace:
    s = _as_set(s)
    norm = make_reverse_factor_free(s)
    if norm.m == 1:
        graph = OverlapGraph(norm.kept)
        return GreedyTrace([], norm.kept.members[0], norm, "linear", PathCollection(graph))
    setup = _linear_setup(norm, policy)
    forced = None
    if policy.mode == ADVERSARIAL:
        forced = min(first_step_candidates(setup),
                     key=lambda e: sum(st.overlap for st in _linear_run(setup, e)[0]))
    steps, pc = _linear_run(setup, forced)
    if len(steps) != norm.m - 1:
        raise InvariantViolation(f"linear scan made {len(steps)} merges, expected {norm.m - 1}")
    if debug:
        pc.check_invariants()
        for e in pc.arcs():
            if setup.graph.weight(e.src, e.dst) != e.weight:
                raise InvariantViolation(f"arc {e} recorded with a stale weight")
    return GreedyTrace(steps, _finish(pc), norm, "linear", pc)


ENGINES = {"linear": greedy_r_linear, "naive": greedy_r_naive}
