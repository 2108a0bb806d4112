import io
import json

import pytest

from scsr.cli import EmptyRecordError, EmptySetError, UnreadableInputError, ingest, main


def run(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_ingest_lines(tmp_path):
    p = tmp_path / "in.txt"
    p.write_text("aabb\naaac\n\nabbb\n")
    s = ingest(str(p))
    assert (s.m, s.n) == (3, 12)


def test_ingest_fasta():
    s = ingest(io.StringIO(">r1\naab\nb\n>r2\naaac\n"), "fasta")
    assert list(s) == [b"aaac", b"aabb"]


def test_ingest_errors(tmp_path):
    with pytest.raises(EmptyRecordError, match="line 1: record 'r1'"):
        ingest(io.StringIO(">r1\n>r2\nab\n"), "fasta")
    with pytest.raises(EmptySetError):
        ingest(io.StringIO("\n\n"))
    with pytest.raises(UnreadableInputError):
        ingest(str(tmp_path / "missing.txt"))


def test_solve_worked_example(monkeypatch):
    code, out, err = run(["solve", "--exact", "--stats"], "aabb\naaac\nabbb\n", monkeypatch)
    stats = json.loads(err.strip().splitlines()[-1])
    assert code == 0 and len(out.strip()) == 7
    assert (stats["k_g"], stats["k_min"], stats["compression_ratio"]) == (7, 7, 1.0)
    assert set(stats) == {"n", "m", "m_after_norm", "k_g", "greedy_overlap", "opt_overlap", "k_min",
                          "compression_ratio", "wall_time_ns", "engine", "policy"}


def test_solve_tight_adversarial(monkeypatch):
    code, out, err = run(["solve", "--policy", "adversarial-first-pair", "--exact", "--stats"],
                         "abbb\nbbbc\nbbbb\n", monkeypatch)
    assert code == 0 and out == "abbbcbbbb\n"
    assert json.loads(err)["compression_ratio"] == 0.5


def test_solve_singleton_and_naive(monkeypatch):
    code, out, err = run(["solve", "--engine", "naive", "--stats"], "xyz\n", monkeypatch)
    assert (code, out) == (0, "xyz\n")
    stats = json.loads(err)
    assert stats["greedy_overlap"] == 0 and stats["opt_overlap"] is None


def test_solve_oracle_over_limit_warns(monkeypatch):
    code, out, err = run(["solve", "--exact", "--stats", "--limit-m", "2"], "aabb\naaac\nabbb\n",
                         monkeypatch)
    assert code == 0 and "exact oracle skipped" in err
    assert json.loads(err.strip().splitlines()[-1])["k_min"] is None


def test_solve_explain_and_dot(monkeypatch, tmp_path):
    dot = tmp_path / "p.dot"
    code, out, err = run(["solve", "--explain", "--dot", str(dot), "--format", "fasta"],
                         ">1\naabb\n>2\naaac\n>3\nabbb\n>4\nab\n", monkeypatch)
    assert code == 0 and out.startswith(">superstring\n")
    assert "step 1" in err and "drop ab" in err
    assert dot.read_text().startswith("digraph")


def test_solve_bad_input(monkeypatch):
    assert run(["solve"], "", monkeypatch)[0] == 2
    assert run(["solve", "--engine", "quantum"], "ab\n", monkeypatch)[0] == 2


def test_gen():
    assert run(["gen", "tight", "--h", "3"])[1] == "abbb\nbbbc\nbbbb\n"
    assert run(["gen", "random", "--seed", "7"])[1] == run(["gen", "random", "--seed", "7"])[1]
    code, out, _ = run(["gen", "shredded", "--flip-prob", "0.5", "--genome-length", "300",
                        "--fragment-length", "20"])
    assert code == 0 and len(out.splitlines()) == 75
    assert run(["gen", "tight", "--h", "0"])[0] == 2


def test_bench_rows():
    code, out, _ = run(["bench", "--sizes", "2000,4000", "--seed", "1"])
    rows = [line.split("\t") for line in out.splitlines()]
    assert code == 0 and rows[0] == ["n", "m", "wall_time_ns", "k_g", "greedy_overlap"]
    assert [int(r[0]) for r in rows[1:]] == [2000, 4000]
    again = run(["bench", "--sizes", "2000,4000", "--seed", "1"])[1].splitlines()
    assert [r.split("\t")[3] for r in again] == [r[3] for r in rows]
    assert len(run(["bench", "--sizes", "3000"])[1].splitlines()) == 2
    assert len(run(["bench", "--sizes", "3000", "--raw"])[1].splitlines()) == 4
    assert run(["bench", "--sizes", "4000,2000"])[0] == 2


def test_reduce(monkeypatch):
    code, out, _ = run(["reduce", "--ell", "3"], "ab\nba\n", monkeypatch)
    assert code == 0 and "scs_within_ell\ttrue" in out and "scsr_within_threshold\ttrue" in out
    code, out, _ = run(["reduce", "--ell", "2"], "ab\nba\n", monkeypatch)
    assert code == 0 and "scs_within_ell\tfalse" in out and "scsr_within_threshold\tfalse" in out
    code, _, err = run(["reduce", "--ell", "5", "--limit-m", "2"], "a\nb\nc\n", monkeypatch)
    assert code == 2 and "limit" in err
