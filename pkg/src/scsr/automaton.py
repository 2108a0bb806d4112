"""Aho-Corasick automaton over a set of byte strings.

States are the distinct prefixes of the member strings. The trie is built by
inserting members in sorted order, so the children of every state are
created in increasing byte order. States are then renumbered level by
level, keeping creation order within a level: state ``0`` is the root,
depth never decreases with the state number, and the number doubles as the
deterministic tie order among states of equal depth.

Transitions are looked up either in a dense table indexed by state and by
the rank of the byte among the bytes that occur (when ``states x alphabet``
is small enough), or by binary search in per-state sorted child arrays;
both give the same answers.

The per-state vertex lists used by the linear-time greedy are packed in CSR
form (``start`` offsets plus a flat ``items`` array) in :class:`StateSets`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from numba import njit

from .strings import StringSet

ROOT = 0
DENSE_ENTRY_LIMIT = 1 << 24


class EmptyPatternSetError(ValueError):
    """An automaton was requested for an empty set of strings."""


class UnknownStringError(KeyError):
    """A string handed to the automaton is not one of its members."""


@njit(cache=True)
def _build_trie(text, offsets):
    m = offsets.shape[0] - 1
    n = text.shape[0]
    max_len = 0
    for i in range(m):
        max_len = max(max_len, offsets[i + 1] - offsets[i])
    parent = np.empty(n + 1, np.int32)
    char = np.empty(n + 1, np.int32)
    depth = np.empty(n + 1, np.int32)
    node_of_pos = np.empty(n, np.int32)
    terminal = np.empty(m, np.int32)
    path = np.zeros(max_len + 1, np.int32)
    parent[0] = -1
    char[0] = -1
    depth[0] = 0
    count = 1
    for i in range(m):
        s = offsets[i]
        length = offsets[i + 1] - s
        lcp = 0
        if i > 0:
            ps = offsets[i - 1]
            bound = min(length, s - ps)
            while lcp < bound and text[ps + lcp] == text[s + lcp]:
                lcp += 1
        for d in range(lcp + 1, length + 1):
            parent[count] = path[d - 1]
            char[count] = text[s + d - 1]
            depth[count] = d
            path[d] = count
            count += 1
        for d in range(1, length + 1):
            node_of_pos[s + d - 1] = path[d]
        terminal[i] = path[length]
    return parent[:count], char[:count], depth[:count], node_of_pos, terminal


@njit(cache=True)
def _counting_order(keys, nkeys):
    """Stable sort of ``range(len(keys))`` by small nonnegative integer keys."""
    start = np.zeros(nkeys + 1, np.int64)
    for k in keys:
        start[k + 1] += 1
    for k in range(nkeys):
        start[k + 1] += start[k]
    out = np.empty(keys.shape[0], np.int32)
    fill = start[:-1].copy()
    for i in range(keys.shape[0]):
        out[fill[keys[i]]] = i
        fill[keys[i]] += 1
    return start, out


@njit(cache=True)
def _renumber(order, parent, char, depth, node_of_pos, terminal):
    """Relabel states so that state ``order[i]`` becomes ``i``."""
    n = order.shape[0]
    new_id = np.empty(n, np.int32)
    for i in range(n):
        new_id[order[i]] = i
    p2 = np.empty(n, np.int32)
    c2 = np.empty(n, np.int32)
    d2 = np.empty(n, np.int32)
    for i in range(n):
        x = order[i]
        p2[i] = new_id[parent[x]] if parent[x] >= 0 else -1
        c2[i] = char[x]
        d2[i] = depth[x]
    for k in range(node_of_pos.shape[0]):
        node_of_pos[k] = new_id[node_of_pos[k]]
    for k in range(terminal.shape[0]):
        terminal[k] = new_id[terminal[k]]
    return p2, c2, d2


@njit(cache=True)
def _goto_sparse(q, c, child_start, child_nodes, char):
    lo = child_start[q]
    hi = child_start[q + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        x = child_nodes[mid]
        if char[x] < c:
            lo = mid + 1
        elif char[x] > c:
            hi = mid
        else:
            return x
    return -1


@njit(cache=True)
def _failure_sparse(bfs, parent, char, child_start, child_nodes):
    fail = np.zeros(parent.shape[0], np.int32)
    for idx in range(1, bfs.shape[0]):
        x = bfs[idx]
        p = parent[x]
        if p == ROOT:
            continue
        c = char[x]
        f = fail[p]
        while True:
            y = _goto_sparse(f, c, child_start, child_nodes, char)
            if y >= 0:
                fail[x] = y
                break
            if f == ROOT:
                break
            f = fail[f]
    return fail


@njit(cache=True)
def _failure_dense(bfs, parent, code, sigma):
    """Failure links plus the full transition table over the compressed alphabet.

    Row ``x`` of ``delta`` still holds plain trie children when ``x`` is
    reached in BFS order; missing ones are then filled from the row of
    ``fail[x]``, which is shallower and therefore already complete.
    """
    nstates = parent.shape[0]
    delta = np.full(nstates * sigma, -1, np.int32)
    for x in range(1, nstates):
        delta[parent[x] * sigma + code[x]] = x
    fail = np.zeros(nstates, np.int32)
    for idx in range(bfs.shape[0]):
        x = bfs[idx]
        row = x * sigma
        frow = fail[x] * sigma
        for c in range(sigma):
            y = delta[row + c]
            if x == ROOT:
                if y < 0:
                    delta[row + c] = ROOT
                continue
            if y >= 0:
                fail[y] = delta[frow + c]
            else:
                delta[row + c] = delta[frow + c]
    return fail, delta


@njit(cache=True)
def _state_sets(nstates, offsets, node_of_pos, fail, terminal, vert_member, vert_id, prune):
    pref_start = np.zeros(nstates + 1, np.int64)
    suf_start = np.zeros(nstates + 1, np.int64)
    for k in range(vert_member.shape[0]):
        q = terminal[vert_member[k]]
        while True:
            suf_start[q + 1] += 1
            if q == ROOT:
                break
            q = fail[q]
    # with pruning, prefix lists are kept only where the suffix list is nonempty
    want = np.ones(nstates, np.bool_)
    if prune:
        for q in range(nstates):
            want[q] = suf_start[q + 1] > 0
    for k in range(vert_member.shape[0]):
        mem = vert_member[k]
        pref_start[ROOT + 1] += 1
        for pos in range(offsets[mem], offsets[mem + 1]):
            q = node_of_pos[pos]
            if want[q]:
                pref_start[q + 1] += 1
    for q in range(nstates):
        pref_start[q + 1] += pref_start[q]
        suf_start[q + 1] += suf_start[q]
    pref_items = np.empty(pref_start[nstates], np.int32)
    suf_items = np.empty(suf_start[nstates], np.int32)
    pref_fill = pref_start[:-1].copy()
    suf_fill = suf_start[:-1].copy()
    for k in range(vert_member.shape[0]):
        mem = vert_member[k]
        v = vert_id[k]
        pref_items[pref_fill[ROOT]] = v
        pref_fill[ROOT] += 1
        for pos in range(offsets[mem], offsets[mem + 1]):
            q = node_of_pos[pos]
            if want[q]:
                pref_items[pref_fill[q]] = v
                pref_fill[q] += 1
        q = terminal[mem]
        while True:
            suf_items[suf_fill[q]] = v
            suf_fill[q] += 1
            if q == ROOT:
                break
            q = fail[q]
    return pref_start, pref_items, suf_start, suf_items


@dataclass(frozen=True, eq=False)
class Automaton:
    """Goto/failure automaton; see the module docstring for the layout.

    ``members`` are sorted and distinct; ``terminal[i]`` is the state
    spelling ``members[i]`` and ``node_of_pos`` maps every byte position of
    the concatenated members to the state reached after reading it.
    """

    members: tuple[bytes, ...]
    offsets: np.ndarray
    parent: np.ndarray
    char: np.ndarray
    depth: np.ndarray
    fail: np.ndarray
    node_of_pos: np.ndarray
    terminal: np.ndarray
    bfs_order: np.ndarray
    child_start: np.ndarray
    child_nodes: np.ndarray
    codes: np.ndarray
    delta: np.ndarray
    index: dict

    @property
    def num_states(self) -> int:
        return int(self.parent.shape[0])

    @property
    def terminal_of(self) -> dict[bytes, int]:
        return {s: int(q) for s, q in zip(self.members, self.terminal)}

    def member_index(self, s: bytes) -> int:
        try:
            return self.index[s]
        except KeyError:
            raise UnknownStringError(s) from None

    def goto(self, q: int, c: int) -> int:
        """Trie transition from ``q`` on byte ``c``, or -1."""
        if self.delta.shape[0]:
            code = int(self.codes[c])
            if code < 0:
                return -1
            y = int(self.delta[q * self.sigma + code])
            return y if y != ROOT and self.parent[y] == q else -1
        return int(_goto_sparse(q, c, self.child_start, self.child_nodes, self.char))

    @property
    def sigma(self) -> int:
        return int((self.codes >= 0).sum())

    def spell(self, q: int) -> bytes:
        out = bytearray()
        while q != ROOT:
            out.append(int(self.char[q]))
            q = int(self.parent[q])
        return bytes(out[::-1])

    def states_of(self, member: int) -> np.ndarray:
        """States spelling the nonempty prefixes of ``members[member]``."""
        return self.node_of_pos[self.offsets[member]:self.offsets[member + 1]]


def build_automaton(members: StringSet | Iterable[bytes]) -> Automaton:
    strings = tuple(members) if isinstance(members, StringSet) else tuple(sorted(set(members)))
    if not strings:
        raise EmptyPatternSetError("cannot build an automaton over no strings")
    if any(not s for s in strings):
        raise ValueError("automaton members must be nonempty")
    text = np.frombuffer(b"".join(strings), dtype=np.uint8)
    offsets = np.zeros(len(strings) + 1, np.int64)
    np.cumsum([len(s) for s in strings], out=offsets[1:])
    parent, char, depth, node_of_pos, terminal = _build_trie(text, offsets)
    nstates = parent.shape[0]
    _, bfs = _counting_order(depth, int(depth.max()) + 1)
    # number states level by level so that the BFS passes below walk memory in order
    parent, char, depth = _renumber(bfs, parent, char, depth, node_of_pos, terminal)
    bfs = np.arange(nstates, dtype=np.int32)
    present = np.flatnonzero(np.bincount(text, minlength=256))
    codes = np.full(256, -1, np.int64)
    codes[present] = np.arange(present.shape[0])
    sigma = present.shape[0]
    if nstates * sigma <= DENSE_ENTRY_LIMIT:
        code = codes[char]
        fail, delta = _failure_dense(bfs, parent, code, sigma)
        child_start = child_nodes = np.empty(0, np.int64)
    else:
        delta = np.empty(0, np.int32)
        child_start, child_nodes = _counting_order(parent[1:] + 0, nstates)
        child_nodes += 1  # _counting_order indexes parent[1:]
        fail = _failure_sparse(bfs, parent, char, child_start, child_nodes)
    return Automaton(
        members=strings,
        offsets=offsets,
        parent=parent,
        char=char,
        depth=depth,
        fail=fail,
        node_of_pos=node_of_pos,
        terminal=terminal,
        bfs_order=bfs,
        child_start=child_start,
        child_nodes=child_nodes,
        codes=codes,
        delta=delta,
        index={s: i for i, s in enumerate(strings)},
    )


def reverse_bfs_states(a: Automaton) -> np.ndarray:
    """States by non-increasing depth, equal depths by increasing number; root last."""
    top = int(a.depth.max())
    _, order = _counting_order(top - a.depth, top + 1)
    return order


@dataclass(frozen=True, eq=False)
class StateSets:
    """Per-state vertex lists in CSR form.

    ``pref_items[pref_start[q]:pref_start[q + 1]]`` are the vertices whose
    string starts with the string of state ``q``; ``suf_items`` likewise for
    vertices whose string ends with it. Within each list vertices keep the
    order in which they were supplied.
    """

    pref_start: np.ndarray
    pref_items: np.ndarray
    suf_start: np.ndarray
    suf_items: np.ndarray

    def pref_set(self, q: int) -> list[int]:
        return self.pref_items[self.pref_start[q]:self.pref_start[q + 1]].tolist()

    def suf_set(self, q: int) -> list[int]:
        return self.suf_items[self.suf_start[q]:self.suf_start[q + 1]].tolist()

    @property
    def total_size(self) -> int:
        return int(self.pref_items.shape[0] + self.suf_items.shape[0])


def compute_state_sets(a: Automaton, vertices: Sequence[tuple[int, bytes]],
                       prune: bool = False) -> StateSets:
    """Prefix and suffix vertex lists for every state.

    Prefix lists come from walking each vertex string down the trie; suffix
    lists from following the failure chain out of its terminal state, which
    visits exactly the states spelling suffixes of the string. With
    ``prune``, prefix lists are left empty at states whose suffix list is
    empty, since no arc can be read off there.
    """
    vert_member = np.fromiter((a.member_index(s) for _, s in vertices), np.int64, len(vertices))
    vert_id = np.fromiter((v for v, _ in vertices), np.int64, len(vertices))
    arrays = _state_sets(a.num_states, a.offsets, a.node_of_pos, a.fail, a.terminal,
                         vert_member, vert_id, prune)
    return StateSets(*arrays)
