import csv
import io
import json

import pytest

from toda_fermion import decompositions, suite as suite_mod
from toda_fermion.cli import main
from toda_fermion.kernel import (
    RationalFn,
    inv_pochhammer,
    inv_qfactorial,
    qpow,
    rational_from_json,
    rational_to_json,
)


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_eval_semi_infinite_sl2():
    code, text = run("eval", "--type", "A1", "--sum", "I", "--m", "2", "--interval", "0,inf")
    assert code == 0
    value = rational_from_json(json.loads(text)["value"])
    assert value == inv_qfactorial(2) * inv_pochhammer("z1", 2)


@pytest.mark.parametrize("argv", [
    ("eval", "--type", "A2", "--sum", "J", "--m", "1,1"),
    ("eval", "--type", "B2", "--sum", "Jint", "--m", "1,1", "--interval=-1,1"),
    ("eval", "--type", "A2", "--sum", "Xpair", "--m", "1,0", "--lam", "sym+1,0"),
    ("eval", "--type", "A1", "--sum", "X", "--m", "2", "--corners", "0:w1;2:1"),
    ("eval", "--type", "C2", "--sum", "I", "--m", "1,1", "--qi"),
])
def test_eval_output_round_trips_bit_exactly(argv):
    code, text = run(*argv)
    assert code == 0
    obj = json.loads(text)["value"]
    assert rational_to_json(rational_from_json(obj)) == obj


@pytest.mark.parametrize("argv", [
    ("verify", "--id", "kminus1", "--type", "A2", "--beta", "1,1"),
    ("verify", "--id", "J0k", "--type", "A1", "--beta", "3", "--k", "2"),
    ("verify", "--id", "toda", "--type", "B2", "--beta", "1,2"),
    ("verify", "--id", "eigen", "--type", "A1", "--D", "3"),
    ("verify", "--id", "appendixA", "--type", "A2", "--D", "2"),
    ("verify", "--id", "vanishing", "--type", "A1", "--beta", "1", "--lam", "1", "--lam2", "-3"),
    ("verify", "--id", "leading", "--type", "A2", "--beta", "2,1"),
    ("verify", "--id", "sl2_X0", "--m", "2"),
    ("verify", "--id", "X_XX", "--m", "2"),
    ("verify", "--id", "id1", "--type", "A2", "--beta", "1,0", "--probabilistic", "--seed", "3"),
])
def test_verify_passes_with_exit_zero(argv):
    code, text = run(*argv)
    assert code == 0, text
    assert json.loads(text)["holds"] is True


def test_failed_verification_exits_one_and_still_reports():
    code, text = run("verify", "--id", "toda", "--type", "B2", "--beta", "0,2", "--literal")
    assert code == 1
    rep = json.loads(text)
    assert rep["holds"] is False and rep["lhs"] and rep["rhs"]
    code, _ = run("verify", "--id", "X_XX", "--m", "2", "--literal")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ("verify", "--id", "no_such_identity", "--type", "A1"),
    ("verify", "--id", "eigen", "--type", "B2"),
    ("eval", "--type", "A1", "--m", "2", "--output", "csv"),
    ("eval", "--type", "A2", "--m", "2"),
    ("eval", "--m", "2"),
    ("eval", "--type", "A1", "--sum", "I", "--m", "1", "--interval", "-inf,inf"),
    ("eval", "--type", "Q7", "--m", "1"),
    ("frobnicate",),
])
def test_usage_errors_exit_two(argv):
    assert run(*argv)[0] == 2


def test_matrix_file(tmp_path):
    good = tmp_path / "c.txt"
    good.write_text("2\n2 -2\n-2 3\n")
    code, text = run("eval", "--matrix", str(good), "--sum", "X", "--m", "1,1", "--corners", "0:1,1")
    assert code == 0
    assert rational_from_json(json.loads(text)["value"]) != RationalFn.zero()
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n2 -1\n-2 2\n")
    assert run("eval", "--matrix", str(bad), "--m", "1,1")[0] == 2
    assert run("eval", "--matrix", str(tmp_path / "missing.txt"), "--m", "1,1")[0] == 2


def test_series_json_and_csv():
    code, text = run("series", "--type", "A2", "--D", "2")
    assert code == 0
    obj = json.loads(text)
    assert obj["degree_bound"] == 2 and len(obj["coeffs"]) == 6
    code, text = run("series", "--type", "A2", "--D", "2", "--output", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["m1", "m2", "numerator", "denominator"]
    assert len(rows) == 7
    assert rows[1][:2] == ["0", "0"] and rows[1][2:] == ["1", "1"]


def test_smoke_suite_passes():
    code, text = run("suite", "--level", "smoke", "--workers", "1")
    summary = json.loads(text)
    assert code == 0
    assert summary["failed"] == 0 and summary["passed"] == summary["total"] > 0


def test_suite_reports_a_corrupted_closed_form(monkeypatch):
    monkeypatch.setattr(decompositions, "closed_I", lambda m: inv_qfactorial(m) * RationalFn.monomial(qpow(1)))
    monkeypatch.setattr(suite_mod, "smoke_tasks", lambda: [("sl2", {"kind": "I", "m": 2})])
    code, text = run("suite", "--level", "smoke", "--workers", "1")
    assert code == 1
    summary = json.loads(text)
    (bad,) = summary["failures"]
    assert bad["holds"] is False and bad["lhs"] != bad["rhs"]


def test_worker_count_from_environment(monkeypatch):
    monkeypatch.setenv("TODA_FERMION_NUM_THREADS", "3")
    assert suite_mod.num_workers() == 3
    monkeypatch.setenv("TODA_FERMION_NUM_THREADS", "zero")
    assert suite_mod.num_workers() == 1


def test_parallel_suite_matches_serial():
    tasks = suite_mod.smoke_tasks()[:6]
    serial = [r["holds"] for r in suite_mod.run_tasks(tasks, 1)]
    parallel = [r["holds"] for r in suite_mod.run_tasks(tasks, 2)]
    assert serial == parallel == [True] * 6
