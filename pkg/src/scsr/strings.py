"""Byte-string primitives: reversal, overlaps, merging and factor tests.

All strings are ``bytes``; the alphabet is the 256 byte values.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class EmptyStringError(ValueError):
    """An empty string was offered where a nonempty one is required."""


def reverse(s: bytes) -> bytes:
    return s[::-1]


def is_palindrome(s: bytes) -> bool:
    return s == s[::-1]


def prefix_function(s: bytes) -> list[int]:
    """Border table: ``pi[i]`` is the longest proper border of ``s[:i + 1]``."""
    pi = [0] * len(s)
    k = 0
    for i in range(1, len(s)):
        c = s[i]
        while k and s[k] != c:
            k = pi[k - 1]
        if s[k] == c:
            k += 1
        pi[i] = k
    return pi


def overlap(u: bytes, v: bytes) -> int:
    """Length of the longest suffix of ``u`` that is also a prefix of ``v``.

    Runs the border automaton of ``v`` over the tail of ``u``, so the cost
    is linear in ``|u| + |v|``. The result may equal ``min(|u|, |v|)``.
    """
    k = min(len(u), len(v))
    if k == 0:
        return 0
    head = v[:k]
    pi = prefix_function(head)
    q = 0
    for c in u[len(u) - k:]:
        while q and (q == k or head[q] != c):
            q = pi[q - 1]
        if head[q] == c:
            q += 1
    return q


def overlap_naive(u: bytes, v: bytes) -> int:
    """Reference overlap by trying every length from the longest down."""
    for k in range(min(len(u), len(v)), 0, -1):
        if u[len(u) - k:] == v[:k]:
            return k
    return 0


def prefix_remainder(u: bytes, v: bytes) -> bytes:
    return u[: len(u) - overlap(u, v)]


def merge(u: bytes, v: bytes) -> bytes:
    """``u`` and ``v`` fused on their maximum overlap."""
    return prefix_remainder(u, v) + v


def is_factor(t: bytes, s: bytes) -> bool:
    return t in s


class StringSet:
    """Immutable, deduplicated set of nonempty byte strings.

    Members are kept in sorted order so iteration is deterministic.
    ``n`` is the total length and ``m`` the number of members.
    """

    __slots__ = ("_members", "_index", "n")

    def __init__(self, strings: Iterable[bytes | str] = ()):
        seen = set()
        for s in strings:
            if isinstance(s, str):
                s = s.encode("latin-1")
            else:
                s = bytes(s)
            if not s:
                raise EmptyStringError("empty strings cannot be members")
            seen.add(s)
        self._members = tuple(sorted(seen))
        self._index = {s: i for i, s in enumerate(self._members)}
        self.n = sum(map(len, self._members))

    @property
    def m(self) -> int:
        return len(self._members)

    @property
    def members(self) -> tuple[bytes, ...]:
        return self._members

    def index(self, s: bytes) -> int:
        return self._index[s]

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[bytes]:
        return iter(self._members)

    def __contains__(self, s: object) -> bool:
        return s in self._index

    def __eq__(self, other: object) -> bool:
        if isinstance(other, StringSet):
            return self._members == other._members
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._members)

    def __repr__(self) -> str:
        return f"StringSet({list(self._members)!r})"

    def closure(self) -> "StringSet":
        """The set together with all reversals of its members."""
        return StringSet(self._members + tuple(s[::-1] for s in self._members))
