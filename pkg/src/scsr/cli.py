"""Command-line interface: ``scsr solve|gen|bench|reduce``.

Exit status is 0 on success, 1 when a result fails its own checks and 2 for
usage, input and size-limit errors.
"""

from __future__ import annotations

import argparse
import gc
import json
import logging
import statistics
import sys
import time
from dataclasses import asdict, dataclass
from typing import IO, Sequence

import numpy as np

from .exact import DEFAULT_LIMIT_M, OracleLimitError, exact_scsr
from .greedy import (ENGINES, POLICY_MODES, InvariantViolation, TieBreakPolicy,
                     greedy_r_linear, verify_superstring_r)
from .instances import random_by_total, random_instance, shredded, tight_instance
from .reduction import ReservedSymbolError, build_reduction, check_reduction_roundtrip
from .strings import StringSet

log = logging.getLogger("scsr")

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE = 0, 1, 2


class IngestError(ValueError):
    """Input could not be turned into a string set."""


class UnreadableInputError(IngestError):
    pass


class EmptyRecordError(IngestError):
    pass


class EmptySetError(IngestError):
    pass


def _read_text(source) -> str:
    if source is None or source == "-":
        return sys.stdin.read()
    if hasattr(source, "read"):
        return source.read()
    try:
        with open(source, encoding="latin-1") as fh:
            return fh.read()
    except OSError as exc:
        raise UnreadableInputError(f"cannot read {source}: {exc.strerror}") from exc


def parse_lines(text: str) -> list[bytes]:
    return [line.encode("latin-1") for line in text.splitlines() if line.strip()]


def parse_fasta(text: str) -> list[bytes]:
    records: list[tuple[str, int, list[str]]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if line.startswith(">"):
            records.append((line[1:].strip(), lineno, []))
        elif line:
            if not records:
                raise UnreadableInputError(f"line {lineno}: sequence before the first '>' header")
            records[-1][2].append(line)
    out = []
    for name, lineno, parts in records:
        if not parts:
            raise EmptyRecordError(f"line {lineno}: record {name!r} is empty")
        out.append("".join(parts).encode("latin-1"))
    return out


def ingest(source=None, fmt: str = "lines") -> StringSet:
    """Read a string set from a path, an open file, or stdin (``None`` or ``-``)."""
    if fmt not in ("lines", "fasta"):
        raise ValueError(f"unknown format {fmt!r}")
    try:
        text = _read_text(source)
    except UnicodeDecodeError as exc:
        raise UnreadableInputError(str(exc)) from exc
    strings = parse_fasta(text) if fmt == "fasta" else parse_lines(text)
    if not strings:
        raise EmptySetError("line 1: input contains no strings")
    return StringSet(strings)


@dataclass
class RunStats:
    """Machine-readable summary of one solve; all lengths in bytes."""

    n: int
    m: int
    m_after_norm: int
    k_g: int
    greedy_overlap: int
    opt_overlap: int | None
    k_min: int | None
    compression_ratio: float | None
    wall_time_ns: int
    engine: str
    policy: str

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def compression_ratio(greedy_overlap: int, opt_overlap: int) -> float:
    # nothing to compress means greedy is trivially optimal
    return 1.0 if opt_overlap == 0 else greedy_overlap / opt_overlap


def solve(s: StringSet, engine: str = "linear", policy: TieBreakPolicy = TieBreakPolicy(),
          exact: bool = False, limit_m: int = DEFAULT_LIMIT_M, debug: bool = False):
    """Run one engine (and optionally the oracle); returns ``(trace, stats)``."""
    t0 = time.perf_counter_ns()
    trace = ENGINES[engine](s, policy, debug)
    elapsed = time.perf_counter_ns() - t0
    if not verify_superstring_r(trace.final, s):
        raise InvariantViolation("greedy output is not a superstring of the input")
    k_g = len(trace.final)
    if k_g != trace.n_norm - trace.total_overlap:
        raise InvariantViolation("output length disagrees with the recorded overlaps")
    opt = k_min = ratio = None
    if exact:
        try:
            res = exact_scsr(trace.normalized.kept, limit_m)
        except OracleLimitError as exc:
            log.warning("exact oracle skipped: %s", exc)
        else:
            opt, k_min = res.opt_overlap, res.length
            ratio = compression_ratio(trace.total_overlap, opt)
    stats = RunStats(s.n, s.m, trace.normalized.m, k_g, trace.total_overlap, opt, k_min,
                     ratio, elapsed, engine, policy.mode)
    return trace, stats


def _write_strings(strings: Sequence[bytes], out: IO[str], fmt: str = "lines", prefix: str = "s"):
    for i, x in enumerate(strings):
        if fmt == "fasta":
            out.write(f">{prefix}{i}\n")
        out.write(x.decode("latin-1") + "\n")


def cmd_solve(args, out, err) -> int:
    s = ingest(args.input, args.format)
    policy = TieBreakPolicy(args.policy, args.seed)
    trace, stats = solve(s, args.engine, policy, args.exact, args.limit_m, args.debug)
    if args.format == "fasta":
        out.write(">superstring\n")
    out.write(trace.final.decode("latin-1") + "\n")
    if args.explain:
        for dropped, why in trace.normalized.dropped:
            err.write(f"drop {dropped.decode('latin-1')}: {why}\n")
        for i, st in enumerate(trace.steps, 1):
            err.write(f"step {i}: {st.left.decode('latin-1')} -> "
                      f"{st.right.decode('latin-1')} overlap {st.overlap}\n")
    if args.dot and trace.paths is not None:
        with open(args.dot, "w") as fh:
            fh.write(trace.paths.to_dot())
    if args.stats:
        err.write(stats.to_json() + "\n")
    return EXIT_OK


def cmd_gen(args, out, err) -> int:
    if args.family == "tight":
        strings = tight_instance(args.h)
    elif args.family == "shredded":
        _, strings = shredded(args.genome_length, args.fragment_length, args.coverage,
                              args.flip_prob, args.seed)
    else:
        rng = np.random.default_rng(args.seed)
        strings = random_instance(rng, args.alphabet_size, args.count, args.min_len, args.max_len)
    _write_strings(strings, out, args.format, "r" if args.family != "shredded" else "frag")
    return EXIT_OK


def bench_rows(sizes: Sequence[int], seed: int = 0, repeats: int = 3, raw: bool = False):
    """Time the linear engine on one random instance per size.

    Returns ``(n, m, wall_time_ns, k_g, greedy_overlap)`` rows, one per size
    with the median time, or one per run when ``raw`` is set. Every size
    gets an untimed warmup run, and the timed runs go round-robin over the
    sizes so that a burst of background load does not land on one size only.
    """
    greedy_r_linear([b"ab", b"ba", b"bb"])  # compile the kernels outside the timed runs
    instances = [StringSet(random_by_total(np.random.default_rng([seed, size]), size))
                 for size in sizes]
    results = [greedy_r_linear(s) for s in instances]
    times: list[list[int]] = [[] for _ in sizes]
    for _ in range(repeats):
        for i, s in enumerate(instances):
            gc.collect()
            gc.disable()  # as timeit does; collector pauses are not the engine's cost
            try:
                t0 = time.perf_counter_ns()
                greedy_r_linear(s)
                times[i].append(time.perf_counter_ns() - t0)
            finally:
                gc.enable()
    rows = []
    for s, trace, ts in zip(instances, results, times):
        tail = (len(trace.final), trace.total_overlap)
        if raw:
            rows.extend((s.n, s.m, t, *tail) for t in ts)
        else:
            rows.append((s.n, s.m, int(statistics.median(ts)), *tail))
    return rows


def cmd_bench(args, out, err) -> int:
    sizes = args.sizes
    if any(b < a for a, b in zip(sizes, sizes[1:])):
        raise argparse.ArgumentTypeError("sizes must be ascending")
    out.write("n\tm\twall_time_ns\tk_g\tgreedy_overlap\n")
    for row in bench_rows(sizes, args.seed, args.repeats, args.raw):
        out.write("\t".join(map(str, row)) + "\n")
    return EXIT_OK


def cmd_reduce(args, out, err) -> int:
    s = ingest(args.input, args.format)
    inst = build_reduction(s)
    scs_ok, scsr_ok = check_reduction_roundtrip(s, args.ell, args.limit_m, inst.reserved)
    out.write(f"# k={inst.k} reserved={bytes(inst.reserved)!r} "
              f"threshold={3 * inst.k * args.ell}\n")
    _write_strings(inst.transformed.members, out)
    out.write(f"scs_within_ell\t{str(scs_ok).lower()}\n")
    out.write(f"scsr_within_threshold\t{str(scsr_ok).lower()}\n")
    if scs_ok != scsr_ok:
        err.write("error: the two decisions disagree\n")
        return EXIT_INVARIANT
    return EXIT_OK


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}")
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive integers")
    return sizes


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scsr", description="Greedy shortest superstring with reversals.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="print a superstring of the input strings")
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("--format", choices=("lines", "fasta"), default="lines")
    sp.add_argument("--engine", choices=sorted(ENGINES), default="linear")
    sp.add_argument("--policy", choices=POLICY_MODES, default="canonical")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--exact", action="store_true", help="also run the exact oracle")
    sp.add_argument("--limit-m", type=_positive, default=DEFAULT_LIMIT_M)
    sp.add_argument("--stats", action="store_true", help="JSON stats on stderr")
    sp.add_argument("--explain", action="store_true", help="merge log on stderr")
    sp.add_argument("--dot", metavar="PATH", help="write the final paths as graphviz")
    sp.add_argument("--debug", action="store_true", help="check invariants while running")
    sp.set_defaults(func=cmd_solve)

    gp = sub.add_parser("gen", help="generate an instance")
    gp.add_argument("family", choices=("random", "tight", "shredded"))
    gp.add_argument("--format", choices=("lines", "fasta"), default="lines")
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--h", type=_positive, default=1)
    gp.add_argument("--alphabet-size", type=_positive, default=4)
    gp.add_argument("--count", type=_positive, default=10)
    gp.add_argument("--min-len", type=_positive, default=1)
    gp.add_argument("--max-len", type=_positive, default=10)
    gp.add_argument("--genome-length", type=_positive, default=1000)
    gp.add_argument("--fragment-length", type=_positive, default=50)
    gp.add_argument("--coverage", type=float, default=5.0)
    gp.add_argument("--flip-prob", type=float, default=0.5)
    gp.set_defaults(func=cmd_gen)

    bp = sub.add_parser("bench", help="time the linear engine on random instances")
    bp.add_argument("--sizes", type=_sizes, default=[100000, 200000, 400000, 800000])
    bp.add_argument("--seed", type=int, default=0)
    bp.add_argument("--repeats", type=_positive, default=3)
    bp.add_argument("--raw", action="store_true", help="one row per run instead of medians")
    bp.set_defaults(func=cmd_bench)

    rp = sub.add_parser("reduce", help="check the hardness gadget on a small instance")
    rp.add_argument("input", nargs="?", default="-")
    rp.add_argument("--format", choices=("lines", "fasta"), default="lines")
    rp.add_argument("--ell", type=int, required=True)
    rp.add_argument("--limit-m", type=_positive, default=DEFAULT_LIMIT_M)
    rp.set_defaults(func=cmd_reduce)
    return p


def main(argv: Sequence[str] | None = None, out: IO[str] | None = None,
         err: IO[str] | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=err, format="%(levelname)s: %(message)s", force=True)
    try:
        return args.func(args, out, err)
    except InvariantViolation as exc:
        err.write(f"invariant violation: {exc}\n")
        return EXIT_INVARIANT
    except (IngestError, OracleLimitError, ReservedSymbolError, argparse.ArgumentTypeError,
            ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
