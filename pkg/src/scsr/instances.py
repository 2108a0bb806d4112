"""Instance generators for tests, the CLI and the benchmark."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

FAMILIES = ("random", "tight", "shredded")


def _alphabet(size: int) -> bytes:
    if not 1 <= size <= 26:
        raise ValueError("alphabet size must be between 1 and 26")
    return bytes(range(ord("a"), ord("a") + size))


def random_instance(rng: np.random.Generator, alphabet_size: int = 4, count: int = 5,
                    min_len: int = 1, max_len: int = 8) -> list[bytes]:
    """``count`` random strings (duplicates possible) over the first letters."""
    if count < 1 or min_len < 1 or max_len < min_len:
        raise ValueError("need count >= 1 and 1 <= min_len <= max_len")
    sigma = np.frombuffer(_alphabet(alphabet_size), np.uint8)
    lengths = rng.integers(min_len, max_len + 1, size=count)
    return [sigma[rng.integers(0, len(sigma), size=k)].tobytes() for k in lengths]


def random_bounded(rng: np.random.Generator, alphabet_size: int, max_count: int,
                   max_total: int) -> list[bytes]:
    """Between 1 and ``max_count`` strings whose lengths sum to at most ``max_total``."""
    count = int(rng.integers(1, max_count + 1))
    cap = max(1, max_total // count)
    return random_instance(rng, alphabet_size, count, 1, cap)


def random_by_total(rng: np.random.Generator, total: int, alphabet: bytes = b"acgt",
                    min_len: int = 20, max_len: int = 60) -> list[bytes]:
    """Random strings of total length exactly ``total`` (the last one may be short)."""
    if total < 1:
        raise ValueError("total length must be positive")
    lengths = []
    left = total
    while left > 0:
        k = min(left, int(rng.integers(min_len, max_len + 1)))
        lengths.append(k)
        left -= k
    sigma = np.frombuffer(alphabet, np.uint8)
    text = sigma[rng.integers(0, len(sigma), size=total)].tobytes()
    out, pos = [], 0
    for k in lengths:
        out.append(text[pos:pos + k])
        pos += k
    return out


def tight_instance(h: int) -> list[bytes]:
    """Greedy keeps only half of the optimal overlap on this family."""
    if h < 1:
        raise ValueError("h must be at least 1")
    b = b"b" * h
    return [b"a" + b, b + b"c", b + b"b"]


def shredded(genome_length: int, fragment_length: int, coverage: float,
             flip_prob: float = 0.5, seed: int = 0, alphabet: bytes = b"acgt"):
    """Random fragments of a random genome, each reversed with ``flip_prob``.

    Returns ``(genome, fragments)``.
    """
    if genome_length < 1 or not 1 <= fragment_length <= genome_length:
        raise ValueError("need 1 <= fragment_length <= genome_length")
    if coverage <= 0 or not 0 <= flip_prob <= 1:
        raise ValueError("coverage must be positive and flip_prob in [0, 1]")
    rng = np.random.default_rng(seed)
    sigma = np.frombuffer(alphabet, np.uint8)
    genome = sigma[rng.integers(0, len(sigma), size=genome_length)].tobytes()
    count = max(1, int(round(coverage * genome_length / fragment_length)))
    starts = rng.integers(0, genome_length - fragment_length + 1, size=count)
    flips = rng.random(count) < flip_prob
    frags = []
    for st, flip in zip(starts.tolist(), flips.tolist()):
        f = genome[st:st + fragment_length]
        frags.append(f[::-1] if flip else f)
    return genome, frags


@dataclass(frozen=True)
class InstanceSpec:
    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    def generate(self) -> list[bytes]:
        p = dict(self.params)
        if self.family == "tight":
            return tight_instance(int(p.get("h", 1)))
        if self.family == "shredded":
            return shredded(int(p.get("genome_length", 1000)), int(p.get("fragment_length", 50)),
                            float(p.get("coverage", 5.0)), float(p.get("flip_prob", 0.5)),
                            int(p.get("seed", 0)))[1]
        rng = np.random.default_rng(int(p.get("seed", 0)))
        return random_instance(rng, int(p.get("alphabet_size", 4)), int(p.get("count", 10)),
                               int(p.get("min_len", 1)), int(p.get("max_len", 10)))
