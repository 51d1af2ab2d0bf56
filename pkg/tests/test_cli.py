import json
import subprocess
import sys
from pathlib import Path

import pytest

from nambulie.cli import main

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def machine_records(out):
    return [json.loads(line) for line in out.splitlines()]


def test_verify_jacobian(capsys):
    code, out, _ = run(capsys, "verify", DATA / "jacobian.txt", "--suite-size", "3")
    assert code == 0
    assert "overall: PASS" in out
    assert "seed: 0x4E414D42" in out


def test_verify_g3_group(capsys):
    code, out, _ = run(capsys, "verify", DATA / "g3.txt", "--suite-size", "2")
    assert code == 0
    assert "[FAIL]" not in out


def test_float_literal_exit_2(capsys):
    code, out, err = run(capsys, "verify", DATA / "bad_float.txt")
    assert code == 2
    assert "line 4, column 15" in err
    assert out == ""


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "verify", DATA / "no_such_file.txt")
    assert code == 2
    assert "cannot read" in err


def test_expected_failure_exit_0(capsys):
    code, out, _ = run(capsys, "verify", DATA / "noninvolutive.txt", "--suite-size", "1")
    assert code == 0
    assert "overall: FAIL expected FAIL" in out


def test_unexpected_verdict_exit_1(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text((DATA / "noninvolutive.txt").read_text().replace("expect: fail\n", ""))
    code, out, _ = run(capsys, "verify", f, "--suite-size", "1")
    assert code == 1
    assert "(unexpected)" in out


def test_machine_records(capsys):
    code, out, _ = run(capsys, "verify", DATA / "noninvolutive.txt", "--machine", "--suite-size", "1")
    assert code == 0
    recs = machine_records(out)
    for r in recs[:-1]:
        assert {"check", "input", "verdict"} <= set(r) <= {"check", "input", "verdict", "witness"}
        assert r["verdict"] in ("pass", "fail")
    summary = recs[-1]
    assert summary["check"] == "summary"
    assert summary["verdict"] == "fail" and summary["expected"] == "fail"
    assert summary["seed"] == "0x4E414D42"
    assert any(r["check"] == "involutive" and r.get("witness") for r in recs)


def test_seed_flag_recorded(capsys):
    _, out, _ = run(capsys, "fi-check", DATA / "jacobian.txt", "--seed", "7", "--suite-size", "2", "--machine")
    assert machine_records(out)[-1]["seed"] == "0x7"


def test_search_u2_case_a(capsys):
    code, out, _ = run(capsys, "search", DATA / "u2.txt", "--case", "a")
    assert code == 0
    assert "solution space dimension: 1" in out
    assert "(x1)*d/dx1^d/dx2^d/dx3^d/dx4" in out


def test_search_su2(capsys):
    code, out, _ = run(capsys, "search", DATA / "u2.txt", "--case", "a", "--ideal", "su2")
    assert code == 0
    assert "(x1)*d/dx2^d/dx3^d/dx4" in out


def test_search_case_b_zero(capsys):
    code, out, _ = run(capsys, "search", DATA / "u2.txt", "--case", "b")
    assert code == 0
    assert "solution space dimension: 0" in out


def test_search_non_ideal_exit_2(capsys):
    code, _, err = run(capsys, "search", DATA / "u2.txt", "--case", "a", "--ideal", "x2")
    assert code == 2
    assert "not an ideal" in err


def test_search_abelian_full_dual(capsys):
    code, out, _ = run(capsys, "search", DATA / "abelian4.txt", "--case", "a", "--ideal", "h3")
    assert code == 0
    assert "solution space dimension: 4" in out


def test_core_command(capsys):
    code, out, _ = run(capsys, "core", DATA / "u2_coboundary_linear.txt")
    assert code == 0
    assert "case: c" in out
    assert "(dim 4)" in out


def test_core_wrong_kind_exit_2(capsys):
    code, _, err = run(capsys, "core", DATA / "jacobian.txt")
    assert code == 2


def test_fi_check_failure_witness(capsys):
    code, out, _ = run(capsys, "fi-check", DATA / "noninvolutive.txt", "--suite-size", "1")
    assert code == 0
    assert "residual=" in out


def test_examples_list(capsys):
    code, out, _ = run(capsys, "examples", "--list")
    assert code == 0
    assert "g3-solvable\tpass" in out
    assert "negative-noninvolutive\tfail" in out


def test_examples_negative_control(capsys):
    code, out, _ = run(capsys, "examples", "negative-noninvolutive", "--suite-size", "1")
    assert code == 0
    assert "FAIL (expected FAIL)" in out


def test_examples_unknown_exit_2(capsys):
    code, _, err = run(capsys, "examples", "nope")
    assert code == 2
    assert "g3-solvable" in err


def test_examples_g3(capsys):
    code, out, _ = run(capsys, "examples", "g3-solvable", "--suite-size", "2", "--detail")
    assert code == 0
    assert "vanishing-subgroup" in out


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["search", str(DATA / "u2.txt")])
    assert exc.value.code == 2


def test_reports_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "nambulie", "verify", str(DATA / "noninvolutive.txt"), "--machine",
           "--suite-size", "2"]
    a = subprocess.run(cmd, capture_output=True, check=True)
    b = subprocess.run(cmd, capture_output=True, check=True)
    assert a.stdout == b.stdout
    assert a.returncode == 0
