import json
import subprocess
import sys
from pathlib import Path

import pytest

from omnilie import cli, dstruct


def run_cli(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr().out


def machine(argv, capsys):
    code, out = run_cli(argv + ["--format", "machine"], capsys)
    return code, json.loads(out)


def test_parse_examples(fixtures):
    req = cli.parse_request(["lie-check", str(fixtures / "so3.json")])
    assert req.command == "lie-check" and req.input_path.endswith("so3.json")
    req = cli.parse_request(["dstruct-search", "--n", "1", "--strategy", "exhaustive"])
    assert req.n == 1 and req.strategy == "exhaustive"
    req = cli.parse_request(["courant-axioms"])
    assert (req.seed, req.trials, req.degree_bound) == (0, 100, 2)


@pytest.mark.parametrize("argv", [
    ["lie-check"],
    ["frobnicate"],
    ["dstruct-search"],
    ["dstruct-search", "--n", "0"],
    ["calg-check"],
    ["calg-check", "x.json", "--n", "2"],
    ["omni-identity", "--trials", "-1"],
    ["linearize", "--format", "xml"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.parse_request(argv)
    assert exc.value.code == 2
    capsys.readouterr()


def test_lie_check(fixtures, capsys):
    code, rep = machine(["lie-check", str(fixtures / "so3.json")], capsys)
    assert code == 0 and rep["verdicts"]["is_lie"] and rep["verdicts"]["graph_d_structure"]
    code, rep = machine(["lie-check", str(fixtures / "nonlie3.json")], capsys)
    assert code == 1
    assert rep["witnesses"]["jacobi_defect"] == {"indices": [1, 2, 3], "defect": ["1", "1", "1"]}
    code, out = run_cli(["lie-check", str(fixtures / "so3.json")], capsys)
    assert code == 0 and "is_lie" in out and "true" in out


def test_courant_dirac(fixtures, capsys):
    code, rep = machine(["courant-dirac", str(fixtures / "omega_x3.json")], capsys)
    assert code == 1 and rep["verdicts"]["d_omega_zero"] is False and "closure" in rep["witnesses"]
    for name in ("omega_const", "lie_poisson_so3", "foliation_x1x2"):
        assert machine(["courant-dirac", str(fixtures / f"{name}.json")], capsys)[0] == 0
    code, rep = machine(["courant-dirac", str(fixtures / "bivector_nonpoisson.json")], capsys)
    assert code == 1 and rep["verdicts"]["schouten_zero"] is False and "schouten" in rep["witnesses"]


def test_dstruct_commands(fixtures, capsys):
    assert machine(["dstruct-classify", str(fixtures / "horizontal2.json")], capsys)[0] == 0
    code, rep = machine(["dstruct-classify", str(fixtures / "graph_nonlie3.json")], capsys)
    assert code == 1 and rep["verdicts"]["closed"] is False
    code, rep = machine(["dstruct-search", "--n", "1", "--strategy", "exhaustive"], capsys)
    assert code == 0 and rep["verdicts"]["count"] == 2 and rep["verdicts"]["complete"]


def test_undetermined_exit_3(tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(dstruct, "_search_null", lambda w, samples, rng: None)
    path = tmp_path / "zero.json"
    path.write_text(json.dumps({"n": 2, "basis": []}))
    code, rep = machine(["dstruct-classify", str(path)], capsys)
    assert code == 3 and rep["status"] == "undetermined" and rep["verdicts"]["maximal"] == "undetermined"
    code, out = run_cli(["dstruct-classify", str(path)], capsys)
    assert code == 3 and "undetermined" in out


def test_calg_check(fixtures, capsys):
    assert machine(["calg-check", "--n", "2"], capsys)[0] == 0
    assert machine(["calg-check", str(fixtures / "omni_instance2.json")], capsys)[0] == 0
    code, rep = machine(["calg-check", str(fixtures / "degenerate_instance.json")], capsys)
    assert code == 1 and rep["verdicts"]["prerequisites"]["weakly_nondegenerate"] is False


def test_generators_and_linearize(capsys):
    code, rep = machine(["omni-identity", "--n", "2", "--trials", "20"], capsys)
    assert code == 0 and rep["verdicts"] == {"n=2": "20/20"}
    code, rep = machine(["linearize", "--n", "2"], capsys)
    assert code == 0 and rep["verdicts"] == {"n=2": "36/36"}
    code, rep = machine(["courant-axioms", "--n", "1", "--trials", "5"], capsys)
    assert code == 0 and rep["verdicts"]["ok"]


@pytest.mark.parametrize("content", ["{not json", json.dumps({"kind": "3form", "nvars": 3})])
def test_bad_input_exit_2(tmp_path, content, capsys):
    path = tmp_path / "bad.json"
    path.write_text(content)
    code, rep = machine(["courant-dirac", str(path)], capsys)
    assert code == 2 and rep["status"] == "error" and rep["witnesses"]["error"]


def test_missing_file_exit_2(tmp_path, capsys):
    code, rep = machine(["lie-check", str(tmp_path / "nope.json")], capsys)
    assert code == 2


def test_exit_code_is_function_of_status():
    for status, code in (("pass", 0), ("fail", 1), ("error", 2), ("undetermined", 3)):
        assert cli.exit_code(cli.Report("x", {}, status)) == code


def test_report_formats():
    rep = cli.Report("lie-check", {"n": 3}, "fail", {"is_lie": False}, {"jacobi_defect": {"indices": [1, 2, 3]}}, 0.5)
    text = cli.emit_report(rep, "human")
    assert "status" in text and "fail" in text and "witness.jacobi_defect.indices" in text
    assert "timing" not in text and "timing_s" in cli.emit_report(rep, "human", timing=True)
    data = json.loads(cli.emit_report(rep, "machine"))
    assert "timing_s" not in data
    assert json.loads(cli.emit_report(rep, "machine", timing=True))["timing_s"] == 0.5


@pytest.mark.parametrize("argv", [
    ["dstruct-search", "--n", "2", "--strategy", "greedy", "--seed", "5", "--budget", "40"],
    ["omni-identity", "--n", "3", "--trials", "10", "--seed", "2"],
    ["courant-axioms", "--n", "2", "--trials", "3", "--seed", "7"],
])
def test_seeded_reports_byte_identical(argv):
    cmd = [sys.executable, "-m", "omnilie"] + argv + ["--format", "machine"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


DEMOS = sorted((Path(__file__).parents[1] / "demos").glob("*.py"))


@pytest.mark.parametrize("script", DEMOS, ids=[p.stem for p in DEMOS])
def test_demo_scripts_run(script):
    out = subprocess.run([sys.executable, str(script)], capture_output=True, text=True, timeout=120)
    assert out.returncode == 0, out.stderr
