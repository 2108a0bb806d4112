"""Hardness gadget: encoding a classic superstring instance as one with reversals.

Each string is stretched by repeating every symbol ``m`` times and then each
symbol ``c`` is replaced by ``$#c``. The two marker symbols make an encoded
string and a reversed encoded string overlap by at most one symbol, so
reversals stop paying off and the optimal lengths correspond (up to the
factor ``3m``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import DEFAULT_LIMIT_M, decide_scs, decide_scsr
from .strings import StringSet

PREFERRED_RESERVED = (b"$"[0], b"#"[0])


class ReservedSymbolError(ValueError):
    """A string uses one of the two reserved marker symbols."""


def _check_pair(reserved: tuple[int, int]) -> tuple[int, int]:
    a, b = (r[0] if isinstance(r, (bytes, bytearray)) else int(r) for r in reserved)
    if a == b:
        raise ValueError("the two reserved symbols must differ")
    return a, b


def morphism_h(s: bytes, reserved=PREFERRED_RESERVED) -> bytes:
    a, b = _check_pair(reserved)
    if a in s or b in s:
        raise ReservedSymbolError(f"{s!r} contains a reserved symbol")
    out = bytearray(3 * len(s))
    out[0::3] = bytes([a]) * len(s)
    out[1::3] = bytes([b]) * len(s)
    out[2::3] = s
    return bytes(out)


def morphism_g(s: bytes, k: int) -> bytes:
    if k < 1:
        raise ValueError("the stretch factor must be at least 1")
    return bytes(c for c in s for _ in range(k))


def choose_reserved(strings) -> tuple[int, int]:
    """``$`` and ``#`` when unused, otherwise the two smallest unused bytes."""
    used = set()
    for s in strings:
        used.update(s)
    if not used.intersection(PREFERRED_RESERVED):
        return PREFERRED_RESERVED
    free = [c for c in range(256) if c not in used]
    if len(free) < 2:
        raise ReservedSymbolError("fewer than two byte values are unused")
    return free[0], free[1]


@dataclass(frozen=True)
class ReductionInstance:
    originals: StringSet
    transformed: StringSet
    k: int
    reserved: tuple[int, int]

    def encode(self, s: bytes) -> bytes:
        return morphism_h(morphism_g(s, self.k), self.reserved)


def build_reduction(s, reserved=None) -> ReductionInstance:
    s = s if isinstance(s, StringSet) else StringSet(s)
    reserved = choose_reserved(s) if reserved is None else _check_pair(reserved)
    k = s.m
    transformed = StringSet(morphism_h(morphism_g(x, k), reserved) for x in s)
    return ReductionInstance(s, transformed, k, reserved)


def check_reduction_roundtrip(s, ell: int, limit_m: int = DEFAULT_LIMIT_M,
                              reserved=None) -> tuple[bool, bool]:
    """Decide both sides of the correspondence; the answers should agree.

    Returns whether ``s`` has a classic superstring of length at most
    ``ell``, and whether the encoded instance has a superstring with
    reversals of length at most ``3 * m * ell``.
    """
    inst = build_reduction(s, reserved)
    m = inst.k
    return (decide_scs(inst.originals, ell, limit_m),
            decide_scsr(inst.transformed, 3 * m * ell, limit_m))
