from __future__ import annotations

import json
import subprocess
import sys

import pytest

from goodred.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION, SCHEMA, main
from goodred.factor import BUDGET_ENV

HARD = f"x^2/(x^2+{1_000_000_007 * 998_244_353})"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA
    assert doc["exit_code"] == code
    return code, doc


def test_analyze(capsys):
    code, doc = run(capsys, "analyze", "-3*x^4+4*x^3", "--prime", "3", "-p", "5")
    assert code == EXIT_OK
    r3, r5 = doc["result"]["reports"]
    assert (r3["p"], r3["sgr"], r3["cgr"], r3["separable"]) == ("3", False, True, False)
    assert r5["sgr"] and r5["cgr"] and r5["separable"]


def test_analyze_without_guard_reports_violation(capsys):
    code, _ = run(capsys, "analyze", "-3*x^4+4*x^3", "-p", "3", "--skip-separability-guard")
    assert code == EXIT_VIOLATION


def test_bad_primes_with_iterate(capsys):
    code, doc = run(capsys, "bad-primes", "(x-1)^2", "--iterate", "2")
    assert code == EXIT_OK and doc["complete"]
    res = doc["result"]
    assert res["map"] == "x^4-4*x^3+4*x^2" and res["degree"] == "4"
    assert res["sgr_bad"] == [] and res["cgr_bad"] == ["2"]


def test_bad_primes_inseparable(capsys):
    code, doc = run(capsys, "bad-primes", "x^3")
    assert doc["result"]["inseparable"] == ["3"]


def test_budget_exhaustion_exit_code(capsys, monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "0")
    code, doc = run(capsys, "bad-primes", HARD)
    assert code == EXIT_BUDGET and not doc["complete"]
    assert doc["result"]["unfactored"]
    monkeypatch.setenv(BUDGET_ENV, "nope")
    assert main(["bad-primes", "x^2"]) == EXIT_INPUT
    capsys.readouterr()


@pytest.mark.parametrize("expr", ["x/0", "x^2+*1", "(x+1)/(x+1)", "x+1"])
def test_bad_input_exit_code(capsys, expr):
    assert main(["bad-primes", expr]) == EXIT_INPUT
    doc = json.loads(capsys.readouterr().out)
    assert doc["exit_code"] == EXIT_INPUT and doc["error"]


def test_invalid_prime_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "x^2", "-p", "4"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_orbit(capsys):
    code, doc = run(capsys, "orbit", "x^2-1", "0")
    assert code == EXIT_OK
    assert doc["result"]["cycle"] == ["0", "-1"] and doc["result"]["cycle_length"] == "2"
    code, doc = run(capsys, "orbit", "x^2-x", "1/2", "--max-steps", "4")
    assert code == EXIT_BUDGET
    assert doc["result"]["points"][:4] == ["1/2", "-1/4", "5/16", "-55/256"]


def test_periodic_and_preper(capsys):
    code, doc = run(capsys, "periodic", "x^2-1", "--n-max", "2")
    assert code == EXIT_OK
    assert doc["result"]["by_period"]["2"] == ["-1", "0"]
    code, doc = run(capsys, "preper", "x^2")
    assert code == EXIT_OK
    assert doc["result"]["points"] == ["-1", "0", "1", "inf"]


def test_lattes(capsys):
    code, doc = run(capsys, "lattes", "-1", "0", "--check-primes", "30")
    assert code == EXIT_OK
    assert doc["result"]["map"] == "(x^4+2*x^2+1)/(4*x^3-4*x)"
    assert doc["result"]["good_reduction_failures"] == []
    assert main(["lattes", "0", "0"]) == EXIT_INPUT
    capsys.readouterr()


def test_bounds(capsys):
    code, doc = run(capsys, "bounds", "--t", "1", "--D", "1", "--d", "2")
    assert code == EXIT_OK
    res = doc["result"]
    assert res["ms_bound"] == "9326265"
    assert res["canci_bound"]["value"].startswith("1000000000012.217")
    assert float(res["corollary"]["ln_C"]) > 0


def test_verify_theorem_empty_corpus(capsys):
    code, doc = run(capsys, "verify-theorem", "--count", "0")
    assert code == EXIT_OK and doc["result"]["maps"] == "0"


def test_verify_theorem_small_corpus(capsys):
    code, doc = run(capsys, "verify-theorem", "--count", "4", "--deg-max", "3", "--prime-bound", "11")
    assert code == EXIT_OK and doc["result"]["violations"] == "0"


def test_output_file_and_determinism(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        assert main(["-o", str(path), "analyze", "x^2+x", "-p", "2", "-p", "3"]) == EXIT_OK
    assert capsys.readouterr().out == ""
    docs = [json.loads(p.read_text()) for p in paths]
    for doc in docs:
        doc.pop("timestamp")
    assert docs[0] == docs[1]
    texts = [p.read_text().splitlines() for p in paths]
    strip = [[line for line in t if '"timestamp"' not in line] for t in texts]
    assert strip[0] == strip[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "goodred", "bounds", "--t", "2", "--D", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "bounds"
