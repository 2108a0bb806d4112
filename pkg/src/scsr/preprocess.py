"""Input normalization: dropping strings that occur inside others.

``make_factor_free`` removes proper factors in time linear in the input by
scanning every member along its own trie path and consulting, at each
prefix state, the nearest member reachable by failure links. Reporting only
that nearest member is enough: any shorter member ending at the same place
is a factor of it and gets caught when the nearer one is scanned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from numba import njit

from .automaton import Automaton, build_automaton
from .strings import StringSet


@njit(cache=True)
def _containers(offsets, node_of_pos, terminal, fail, bfs):
    nstates = fail.shape[0]
    m = terminal.shape[0]
    term_member = np.full(nstates, -1, np.int32)
    for i in range(m):
        term_member[terminal[i]] = i
    # nearest member state strictly down the failure chain
    dict_link = np.full(nstates, -1, np.int32)
    for idx in range(1, bfs.shape[0]):
        x = bfs[idx]
        f = fail[x]
        if term_member[f] >= 0:
            dict_link[x] = f
        else:
            dict_link[x] = dict_link[f]
    container = np.full(m, -1, np.int64)
    for i in range(m):
        start = offsets[i]
        length = offsets[i + 1] - start
        for pos in range(start, start + length):
            x = node_of_pos[pos]
            if pos - start + 1 < length and term_member[x] >= 0:
                j = term_member[x]
                if container[j] < 0:
                    container[j] = i
            t = dict_link[x]
            if t >= 0:
                j = term_member[t]
                if container[j] < 0:
                    container[j] = i
    return container


def factor_containers(a: Automaton) -> np.ndarray:
    """For each member, the index of some member containing it properly, or -1."""
    return _containers(a.offsets, a.node_of_pos, a.terminal, a.fail, a.bfs_order)


def make_factor_free(x: StringSet | Iterable[bytes]) -> StringSet:
    x = x if isinstance(x, StringSet) else StringSet(x)
    if not len(x):
        return x
    a = build_automaton(x)
    container = factor_containers(a)
    return StringSet(s for s, c in zip(a.members, container) if c < 0)


@dataclass(frozen=True)
class NormalizedInput:
    """Reverse-factor-free representatives of an input set.

    Every kept string is lexicographically no larger than its reversal.
    ``dropped`` lists each distinct input string that did not survive
    verbatim, with a human-readable reason.
    """

    kept: StringSet
    dropped: list[tuple[bytes, str]] = field(default_factory=list)
    palindromes: StringSet = field(default_factory=StringSet)
    # automaton over the input and its reversals; every kept string and its
    # reversal is a member, so it can be reused downstream
    automaton: Automaton | None = field(default=None, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.kept.n

    @property
    def m(self) -> int:
        return self.kept.m


def make_reverse_factor_free(s: StringSet | Iterable[bytes]) -> NormalizedInput:
    s = s if isinstance(s, StringSet) else StringSet(s)
    if not len(s):
        return NormalizedInput(StringSet())
    closure = s.closure()
    a = build_automaton(closure)
    container = factor_containers(a)
    members = a.members
    kept = StringSet(u for u, c in zip(members, container) if c < 0 and u <= u[::-1])

    def representative(u: bytes) -> bytes:
        i = a.index[u]
        while container[i] >= 0:
            i = int(container[i])
        return members[i]

    dropped = []
    for u in s:
        if u in kept:
            continue
        host = representative(u)
        if host == u:
            dropped.append((u, f"reversal of {u[::-1]!r}"))
        elif host in kept:
            dropped.append((u, f"factor of {host!r}"))
        else:
            dropped.append((u, f"factor of reversal of {host[::-1]!r}"))
    palindromes = StringSet(u for u in kept if u == u[::-1])
    return NormalizedInput(kept, dropped, palindromes, a)


def is_factor_free(strings: Iterable[bytes]) -> bool:
    """Quadratic reference check."""
    xs = list(set(strings))
    return not any(u != v and u in v for u in xs for v in xs)


def is_reverse_factor_free(strings: Iterable[bytes]) -> bool:
    """Quadratic reference check: no member inside another member or its reversal."""
    xs = list(strings)
    if len(set(xs)) != len(xs):
        return False
    for i, u in enumerate(xs):
        for j, v in enumerate(xs):
            if i != j and (u in v or u in v[::-1]):
                return False
    return True
