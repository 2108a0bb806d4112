"""Overlap graph with reversal-paired vertices and disjoint-path collections.

Kept string ``i`` owns vertex ``2*i`` (forward) and ``2*i + 1`` (reversed),
so the mate of a vertex is ``v ^ 1``. Arcs are never stored wholesale; their
weights are computed on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .strings import StringSet, overlap

NONE = -1


def mate(v: int) -> int:
    return v ^ 1


class Arc(NamedTuple):
    src: int
    dst: int
    weight: int


def rev(e: Arc) -> Arc:
    return Arc(mate(e.dst), mate(e.src), e.weight)


class PathError(ValueError):
    """A path query named a vertex that does not start a path."""


class ArcInsertionError(RuntimeError):
    """add_arc_pair was called with an arc that breaks the path structure."""


class OverlapGraph:
    def __init__(self, kept: StringSet | Sequence[bytes]):
        self.kept = tuple(kept)
        self.strings: list[bytes] = []
        for s in self.kept:
            self.strings.append(s)
            self.strings.append(s[::-1])

    @property
    def num_vertices(self) -> int:
        return len(self.strings)

    def string(self, v: int) -> bytes:
        return self.strings[v]

    def weight(self, a: int, b: int) -> int:
        return overlap(self.strings[a], self.strings[b])

    def arc(self, a: int, b: int) -> Arc:
        if a == b:
            raise ValueError("arcs join distinct vertices")
        return Arc(a, b, self.weight(a, b))

    def label(self, v: int) -> str:
        return f"{v >> 1}{'R' if v & 1 else ''}"

    def vertices(self) -> list[tuple[int, bytes]]:
        return list(enumerate(self.strings))


def build_graph(norm) -> OverlapGraph:
    return OverlapGraph(norm.kept)


class PathCollection:
    """Arc set forming vertex-disjoint paths, closed under arc reversal.

    ``succ``/``pred`` hold path neighbours; for a vertex that ends or starts
    a path, ``other_end`` is the opposite endpoint of that path. Interior
    vertices keep stale ``other_end`` entries which are never read.
    """

    def __init__(self, graph: OverlapGraph):
        self.graph = graph
        nv = graph.num_vertices
        self.succ = np.full(nv, NONE, np.int64)
        self.pred = np.full(nv, NONE, np.int64)
        self.weight_out = np.zeros(nv, np.int64)
        self.other_end = np.arange(nv, dtype=np.int64)
        self.num_arcs = 0

    @classmethod
    def from_arrays(cls, graph, succ, pred, weight_out, other_end) -> "PathCollection":
        pc = cls.__new__(cls)
        pc.graph = graph
        pc.succ, pc.pred, pc.weight_out, pc.other_end = succ, pred, weight_out, other_end
        pc.num_arcs = int((succ != NONE).sum())
        return pc

    def is_start(self, v: int) -> bool:
        return self.pred[v] == NONE

    def is_end(self, v: int) -> bool:
        return self.succ[v] == NONE

    def arcs(self) -> Iterator[Arc]:
        for v in np.flatnonzero(self.succ != NONE):
            yield Arc(int(v), int(self.succ[v]), int(self.weight_out[v]))

    def can_add(self, e: Arc) -> bool:
        a, b = e.src, e.dst
        if a == b or b == mate(a):
            return False
        if self.succ[a] != NONE or self.pred[b] != NONE:
            return False
        if self.other_end[a] == b:
            return False
        ra, rb = mate(b), mate(a)
        if self.succ[ra] != NONE or self.pred[rb] != NONE or self.other_end[ra] == rb:
            return False
        return True

    def add_arc_pair(self, e: Arc) -> None:
        if not self.can_add(e):
            raise ArcInsertionError(f"cannot add {e} to the path collection")
        a, b, w = e
        start, end = int(self.other_end[a]), int(self.other_end[b])
        self.succ[a], self.pred[b], self.weight_out[a] = b, a, w
        self.other_end[start], self.other_end[end] = end, start
        ra, rb = mate(b), mate(a)
        self.succ[ra], self.pred[rb], self.weight_out[ra] = rb, ra, w
        self.other_end[mate(end)], self.other_end[mate(start)] = mate(start), mate(end)
        self.num_arcs += 2

    def path(self, start: int) -> list[int]:
        if not self.is_start(start):
            raise PathError(f"vertex {start} does not start a path")
        out = [start]
        v = start
        while self.succ[v] != NONE:
            v = int(self.succ[v])
            out.append(v)
        return out

    def path_string(self, start: int) -> bytes:
        vs = self.path(start)
        strings = self.graph.strings
        pieces = []
        for v in vs[:-1]:
            s = strings[v]
            pieces.append(s[: len(s) - int(self.weight_out[v])])
        pieces.append(strings[vs[-1]])
        return b"".join(pieces)

    def path_overlap(self, start: int) -> int:
        vs = self.path(start)
        return int(sum(int(self.weight_out[v]) for v in vs[:-1]))

    def path_starts(self) -> list[int]:
        return [int(v) for v in np.flatnonzero(self.pred == NONE)]

    def is_semi_hamiltonian(self, start: int) -> bool:
        vs = self.path(start)
        return len(vs) * 2 == self.graph.num_vertices and len({v >> 1 for v in vs}) == len(vs)

    def check_invariants(self) -> None:
        """Raise AssertionError unless arcs form reversal-paired disjoint paths."""
        nv = self.graph.num_vertices
        for v in range(nv):
            w = self.succ[v]
            if w != NONE:
                assert self.pred[w] == v
                assert w != v and w != mate(v)
                assert self.succ[mate(w)] == mate(v), "arc set not closed under reversal"
                assert self.weight_out[mate(w)] == self.weight_out[v]
        seen = set()
        for s in self.path_starts():
            vs = self.path(s)
            assert not seen.intersection(vs)
            seen.update(vs)
            assert self.other_end[s] == vs[-1] and self.other_end[vs[-1]] == s
            assert [mate(v) for v in reversed(vs)] == self.path(mate(vs[-1]))
        assert len(seen) == nv, "cycle in arc set"

    def to_dot(self) -> str:
        lines = ["digraph paths {"]
        for v in range(self.graph.num_vertices):
            lines.append(f'  v{v} [label="{self.graph.label(v)}"];')
        for e in self.arcs():
            lines.append(f'  v{e.src} -> v{e.dst} [label="{e.weight}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def can_add(pc: PathCollection, e: Arc) -> bool:
    return pc.can_add(e)


def add_arc_pair(pc: PathCollection, e: Arc) -> PathCollection:
    pc.add_arc_pair(e)
    return pc


def path_string(pc: PathCollection, start: int) -> bytes:
    return pc.path_string(start)


def path_overlap(pc: PathCollection, start: int) -> int:
    return pc.path_overlap(start)
