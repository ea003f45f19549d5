import json
from pathlib import Path

import pytest

from pdsreduce.cli import main
from pdsreduce.pushdown import parse_system

DATA = Path(__file__).resolve().parent.parent / "data"
AA, AB, TWO = (str(DATA / f) for f in ("aa.yaml", "ab.yaml", "two_pairs.yaml"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_reduce_writes_files(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(capsys, "reduce", AA, "--quantum")
    assert code == 0
    assert "rules: 38" in out
    system = parse_system((tmp_path / "aa.quantum.pds").read_text())
    assert system.flavor == "quantum"
    formula = (tmp_path / "aa.eq10.pctl").read_text()
    assert "P{=1/6}" in formula and "P{=1/3}" in formula


def test_check_witness(capsys):
    code, out, _ = run(capsys, "check-witness", AA, "--w", "1")
    assert code == 0
    assert "solution: yes; p1=3/8 p2=1/8; oracle agrees" in out
    code, out, _ = run(capsys, "check-witness", AB, "--w", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] is False and data["p2"] == "3/8"


def test_search_and_solve(capsys):
    code, out, _ = run(capsys, "search", TWO, "--quantum")
    assert code == 0 and "w = 1 2" in out and "reduction agrees" in out
    code, out, _ = run(capsys, "solve-pcp", AB)
    assert code == 0 and "no solution" in out
    code, out, _ = run(capsys, "solve-pcp", TWO)
    assert "w = 1 2 (ABA)" in out


def test_rho(capsys):
    assert run(capsys, "rho", "AAB")[1].strip() == "13/16"
    assert run(capsys, "rho", "ABAZ'", "--bar")[1].strip() == "5/16"
    assert run(capsys, "rho", "AC")[0] == 2


def test_eval_worked_example(capsys):
    start = "F <A,A> <A,.> <.,A> <B,B> Z'"
    phi = "(!S & !X<A,A> & !X<A,B> & !X<A,.> & !X<B,A> & !X<B,B> & !X<B,.>) U (X<A,A> | X<A,B> | X<A,.>)"
    code, out, _ = run(capsys, "eval", AA, "--start", start, "--path", "--formula", phi, "--oracle", "20")
    assert code == 0
    assert "probability: 13/16" in out and "oracle: 13/16 (residual 0)" in out
    code, out, _ = run(capsys, "eval", AA, "--start", "N <A,A> Z'", "--formula", f"P{{=3/8}}[{phi}]")
    assert out.strip() == "holds: yes"


def test_eval_budget_and_bounded(capsys):
    code, _, err = run(capsys, "eval", AA, "--start", "Z", "--formula", "P{>0}[true U C]", "--budget", "100")
    assert code == 3 and "--bounded" in err
    code, out, _ = run(capsys, "eval", AA, "--start", "Z", "--formula", "P{>0}[true U C]", "--bounded", "5")
    assert code == 0 and "holds: yes" in out


def test_unfold_stop(capsys, tmp_path):
    dot = tmp_path / "t.dot"
    code, out, _ = run(
        capsys, "unfold", AA, "--start", "F <A,A> <A,.> <.,A> <B,B> Z'", "--depth", "12",
        # stop at targets and at guard violations
        "--stop", "X<A,A> | X<A,B> | X<A,.> | S | X<B,A> | X<B,B> | X<B,.>", "--dot", str(dot),
    )
    assert code == 0
    text = dot.read_text()
    boxes = [line for line in text.splitlines() if "shape=box" in line]
    hits = [line for line in boxes if 'label="X<A,' in line]
    assert len(hits) == 4


def test_unfold_stdout_is_deterministic(capsys):
    a = run(capsys, "unfold", AA, "--start", "Z", "--depth", "4")[1]
    b = run(capsys, "unfold", AA, "--start", "Z", "--depth", "4")[1]
    assert a == b and a.startswith("digraph")


def test_validate(capsys, tmp_path):
    assert run(capsys, "validate", TWO, "--variant", "remark9b")[0] == 0
    bad = tmp_path / "bad.pds"
    bad.write_text("flavor: probabilistic\nalphabet: D\nD -> D D @ 1/3\nD -> ε @ 1/3\n")
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1 and "D: weight sum 2/3 != 1" in out


def test_bad_inputs(capsys, tmp_path):
    assert run(capsys, "check-witness", "nothere.yaml", "--w", "1")[0] == 2
    assert run(capsys, "check-witness", AA, "--w", "2")[0] == 2
    assert run(capsys, "eval", AA, "--start", "C", "--formula", "P{>0}[")[0] == 2
    assert run(capsys, "eval", AA, "--start", "C", "--formula", "P{>0}[X C | X N]")[0] == 2
    with pytest.raises(SystemExit):
        main(["reduce", AA, "--t", "1"])


def test_reduce_quantum_formats(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    run(capsys, "reduce", AA, "--quantum", "--system-out", "q.pds")
    text = (tmp_path / "q.pds").read_text()
    assert "Z -> G1^1 Z' @ sq=1 phase=t1" in text


def test_unfold_depth_eight_shows_the_four_paths(capsys):
    out = run(capsys, "unfold", AA, "--start", "F <A,A> <A,.> <.,A> <B,B> Z'", "--depth", "8")[1]
    assert 'label="X<A,A> <A,•> <•,A> <B,B> Z\'"' in out
    assert 'label="X<A,•> <•,A> <B,B> Z\'"' in out
    assert out.count('label="X<A,B>"') >= 2
