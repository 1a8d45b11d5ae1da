import io
import json
import os
import subprocess
import sys

import pytest

from ltlearn.cli import run
from ltlearn.formula import parse
from ltlearn.semantics import classify, is_consistent
from ltlearn.traceio import load_sample

P_VS_EMPTY = ".props: p\n.positive:\n|1\n.negative:\n|0\n"
XP_FP = ".props: p\n.positive:\n0|1\n.negative:\n|0\n"


@pytest.fixture
def write(tmp_path):
    def _write(text, name="s.trace"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_learn_prints_formula_and_size(write):
    code, out, _ = call("learn", "--input", write(P_VS_EMPTY))
    assert code == 0
    assert out.startswith("formula := p\nsize := 1\n")


def test_budget_exit_code(write):
    code, _, err = call("learn", "--input", write(XP_FP), "--max-size", "1")
    assert code == 2
    assert "size <= 1" in err


def test_count_and_json_stats(write):
    code, out, _ = call("learn", "--input", write(XP_FP), "--count", "2", "--stats", "json-lines")
    assert code == 0
    lines = out.splitlines()
    assert sorted(lines[:2]) == ["formula := (F p)", "formula := (X p)"]
    records = [json.loads(line) for line in lines[3:]]
    assert [(r["n"], r["verdict"]) for r in records] == [(1, "UNSAT"), (2, "SAT")]


def test_eval_matches_evaluator(write):
    path = write(XP_FP)
    code, out, _ = call("eval", "--formula", "F p", "--input", path)
    assert code == 0
    expected = classify(parse("F p"), load_sample(path).words)
    assert out.split() == ["true" if v else "false" for v in expected]


def test_user_errors(write, tmp_path):
    assert call("eval", "--formula", "p U", "--input", write(XP_FP))[0] == 1
    assert call("learn", "--input", str(tmp_path / "missing.trace"))[0] == 1
    assert call("learn", "--input", write(".props: p\n.positive:\n1|\n"))[0] == 1
    assert call("learn")[0] == 1
    assert call("learn", "--input", write(XP_FP), "--ops", "!,W")[0] == 1
    assert call("learn", "--input", write(XP_FP), "--solver", "minisat")[0] == 1


def test_learn_dt_and_plot(write, tmp_path):
    code, out, _ = call("gen", "--pattern", "2", "--sizes", "20", "--seed", "3",
                        "--output", str(tmp_path / "g.trace"))
    assert code == 0
    png = tmp_path / "rounds.png"
    code, out, _ = call("learn-dt", "--input", str(tmp_path / "g.trace"), "--plot", str(png))
    assert code == 0
    formula_line = next(line for line in out.splitlines() if line.startswith("formula := "))
    formula = parse(formula_line.split(":= ", 1)[1])
    assert is_consistent(formula, load_sample(tmp_path / "g.trace"))
    assert png.stat().st_size > 0


def test_mode_dt_is_learn_dt(write):
    path = write(P_VS_EMPTY)
    assert call("learn", "--mode", "dt", "--input", path)[1] == call("learn-dt", "--input", path)[1]


def test_learn_plot(write, tmp_path):
    png = tmp_path / "sizes.png"
    assert call("learn", "--input", write(XP_FP), "--plot", str(png))[0] == 0
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_output_is_deterministic(write):
    path = write(XP_FP)
    strip = lambda text: [line for line in text.splitlines() if not line.startswith("n=")]
    runs = [call("learn", "--input", path, "--count", "5")[1] for _ in range(2)]
    assert strip(runs[0]) == strip(runs[1])
    dt_runs = [call("learn-dt", "--input", path, "--seed", "4")[1] for _ in range(2)]
    assert dt_runs[0] == dt_runs[1]


def test_export_cnf(write, tmp_path):
    target = tmp_path / "phi.cnf"
    assert call("export-cnf", "--input", write(XP_FP), "--size", "2", "--output", str(target))[0] == 0
    text = target.read_text()
    assert "p cnf" in text and "c x 2 F" in text


def test_gen_suite(tmp_path):
    code, out, _ = call("gen", "--sizes", "6", "--seeds", "0,1", "--output", str(tmp_path / "suite"))
    assert code == 0
    assert len(os.listdir(tmp_path / "suite")) == 19


def test_gen_bad_pattern_index(tmp_path):
    assert call("gen", "--pattern", "42", "--output", str(tmp_path / "x"))[0] == 1


def test_console_script_entry_point(write):
    proc = subprocess.run([sys.executable, "-m", "ltlearn.cli", "learn", "--input", write(P_VS_EMPTY)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("formula := p\n")


def test_shipped_sample_learns_stable_leader():
    path = os.path.join(os.path.dirname(__file__), os.pardir, "samples", "leader_election.trace")
    code, out, _ = call("learn", "--input", path)
    assert code == 0
    assert out.startswith("formula := (F (G leading))\nsize := 3\n")
