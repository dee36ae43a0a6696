import io
import json
import subprocess
import sys

import pytest

from monolcs import __version__
from monolcs import serialization as S
from monolcs.cli import EXIT_INPUT, EXIT_OK, EXIT_USAGE, run


def call(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def pipe(first, second, capsys, monkeypatch):
    code, out, _ = call(first, capsys)
    assert code == EXIT_OK
    code, out, err = call(second, capsys, out, monkeypatch)
    assert code == EXIT_OK, err
    return json.loads(out)


def test_mermin_star_is_unsat(capsys, monkeypatch):
    doc = pipe(["builtins", "mermin-star"], ["lcs", "solve", "-"], capsys, monkeypatch)
    assert doc["verdict"] == "UNSAT" and doc["certificate"]
    assert doc["monolcs_version"] == __version__
    assert doc["config"]["group"] == "lcs"


def test_bundle_verifies_its_own_assignment(capsys, monkeypatch):
    doc = pipe(["builtins", "mp-square"], ["lcs", "verify", "-"], capsys, monkeypatch)
    assert doc["verdict"] == "pass"


def test_qudit_star_witness(capsys, monkeypatch):
    doc = pipe(["builtins", "qudit-star", "--p", "3"], ["mbqc", "witness", "-"], capsys, monkeypatch)
    assert doc["degree"] >= 3 and doc["contextual"] is True


def test_qudit_star_reports_output_sum(capsys):
    code, out, _ = call(["builtins", "qudit-star", "--p", "5"], capsys)
    assert code == EXIT_OK
    s = json.loads(out)["output_sum"]
    assert s == {"computed": 0, "closed_form_claim": 4, "agrees": False}


def test_mbqc_simulate_and_lcs(capsys, monkeypatch):
    doc = pipe(["builtins", "mermin-star"], ["mbqc", "simulate", "-"], capsys, monkeypatch)
    assert sorted(o["o"] for o in doc["outputs"]) == [0, 1, 1, 1]
    doc = pipe(["builtins", "qudit-star", "--p", "3"], ["mbqc", "lcs", "-", "--mode", "raw"], capsys, monkeypatch)
    L = S.lcs_from_json(doc["lcs"])
    assert L.cols == 9 + 27


def test_exhaustive_vN_audit(capsys):
    code, out, _ = call(["homs", "audit", "--map", "vN", "--p", "3", "--phase-exp", "1", "--exhaustive"], capsys)
    doc = json.loads(out)
    assert code == EXIT_OK and doc["failure_count"] == 0 and doc["verdict"] == "pass"
    assert doc["config"]["samples"] is None


def test_failing_audit_still_exits_zero(capsys):
    code, out, _ = call(["homs", "audit", "--map", "vN-cyclic", "--p", "3", "--phase-exp", "2", "--exhaustive"],
                        capsys)
    assert code == EXIT_OK and json.loads(out)["verdict"] == "fail"


def test_census(capsys):
    code, out, _ = call(["homs", "census", "--p", "5"], capsys)
    doc = json.loads(out)
    assert code == EXIT_OK and doc["count"] == 6
    assert S.census_from_json(doc).count == 6


def test_seeded_reports_are_byte_identical(capsys):
    argv = ["homs", "audit", "--map", "vN", "--p", "5", "--samples", "3000", "--seed", "4"]
    first = call(argv, capsys)[1]
    second = call(argv + ["--threads", "1"], capsys)[1]
    assert first == second
    other = call(argv[:-1] + ["5"], capsys)[1]
    assert json.loads(other)["seed"] == 5


def test_emitted_artifacts_re_parse(capsys, tmp_path):
    out = tmp_path / "star.json"
    assert run(["builtins", "mermin-star", "-o", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    spec = S.mbqc_from_json(doc["mbqc"])
    assert S.dumps(spec.to_json()) == S.dumps(doc["mbqc"])
    L = S.lcs_from_json(doc["lcs"])
    assert S.dumps(L.to_json()) == S.dumps(doc["lcs"])
    capsys.readouterr()


@pytest.mark.parametrize("argv", [
    [],
    ["lcs"],
    ["homs", "audit", "--p", "3"],
    ["homs", "audit", "--map", "vH", "--p", "4"],
    ["homs", "audit", "--map", "vH", "--p", "3", "--exhaustive", "--samples", "5"],
    ["builtins", "qudit-star"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert call(argv, capsys)[0] == EXIT_USAGE


def test_malformed_json_exits_three(capsys, monkeypatch):
    code, _, err = call(["lcs", "solve", "-"], capsys, "{not json", monkeypatch)
    assert code == EXIT_INPUT and "line 1" in err


def test_schema_error_names_field(capsys, monkeypatch):
    bad = {"p": 2, "var_names": ["x"], "rows": [{"coeffs": [[0, 1]]}]}
    code, _, err = call(["lcs", "solve", "-"], capsys, json.dumps(bad), monkeypatch)
    assert code == EXIT_INPUT and "$.rows[0].rhs" in err


def test_missing_file_exits_three(capsys, tmp_path):
    assert call(["lcs", "solve", str(tmp_path / "nope.json")], capsys)[0] == EXIT_INPUT


def test_verify_without_assignment_exits_three(capsys, monkeypatch):
    doc = {"p": 2, "var_names": ["x"], "rows": [{"coeffs": [[0, 1]], "rhs": 0}]}
    assert call(["lcs", "verify", "-"], capsys, json.dumps(doc), monkeypatch)[0] == EXIT_INPUT


def test_module_entry_point_pipes():
    star = subprocess.run([sys.executable, "-m", "monolcs", "builtins", "mermin-star"],
                          capture_output=True, text=True, check=True)
    solved = subprocess.run([sys.executable, "-m", "monolcs", "lcs", "solve", "-"], input=star.stdout,
                            capture_output=True, text=True)
    assert solved.returncode == 0
    assert json.loads(solved.stdout)["verdict"] == "UNSAT"
