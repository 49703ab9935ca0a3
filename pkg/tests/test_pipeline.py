import json

import pytest
from click.testing import CliRunner

import pipeline
from elements import build_cup
from graded import GradedElement, as_graded
from models import Report
from pipeline import Suite, SuiteSpec, cli, evaluate_expression, full_battery, run_suite
from scalar import DELTA


@pytest.fixture
def runner():
    return CliRunner()


def test_verify_single_suite(runner):
    result = runner.invoke(cli, ["verify", "--suite", "xy-inverse", "--param", "N=2", "--param", "k=1"])
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["suite"] == "xy-inverse"
    assert report["params"] == {"N": 2, "k": 1}
    assert report["passed"] is True
    assert report["failures"] == []
    assert "wall_ms" not in report


def test_verify_is_byte_identical(runner):
    args = ["verify", "--suite", "associativity", "--param", "M=2", "--param", "k=0", "--param", "samples=3"]
    assert runner.invoke(cli, args).output == runner.invoke(cli, args).output


def test_verify_seed_recorded(runner):
    result = runner.invoke(cli, ["verify", "--suite", "star-structure", "--param", "samples=2", "--seed", "7"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.output)["params"]["seed"] == 7


def test_verify_several_suites_pretty(runner):
    result = runner.invoke(cli, ["verify", "--suite", "moments", "--suite", "binomial", "--param", "k=0",
                                 "--format", "pretty", "--timing"])
    # binomial has no k parameter
    assert result.exit_code == 2

    result = runner.invoke(cli, ["verify", "--suite", "moments", "--suite", "splitting", "--format", "pretty", "--timing"])
    assert result.exit_code == 0, result.output
    assert result.output.count("PASS") == 2
    assert " ms" in result.output


@pytest.mark.parametrize("args", [
    ["verify"],
    ["verify", "--suite", "nope"],
    ["verify", "--suite", "moments", "--param", "depth=3"],
    ["verify", "--suite", "moments", "--param", "mmax=abc"],
    ["verify", "--suite", "moments", "--param", "mmax=2.5"],
    ["verify", "--suite", "moments", "--param", "mmax"],
    ["verify", "--all", "--param", "k=1"],
    ["verify", "--suite", "gram", "--param", "s0=0"],
])
def test_verify_usage_errors(runner, args):
    assert runner.invoke(cli, args).exit_code == 2


def test_verify_failure_exits_one(runner, monkeypatch):
    def broken(**params):
        report = Report("counts", params)
        report.check({"case": 1}, 1, 2)
        return report

    monkeypatch.setitem(pipeline.SUITES, "counts", Suite(broken, {}))
    result = runner.invoke(cli, ["verify", "--suite", "counts"])
    assert result.exit_code == 1
    report = json.loads(result.output)
    assert report["passed"] is False
    assert report["failures"] == [{"input": {"case": 1}, "lhs": 1, "rhs": 2}]


def test_verify_runner_crash_exits_one(runner, monkeypatch, tmp_path):
    def crashing(**params):
        raise ValueError("P_{2,1} and P_{1,1} differ")

    monkeypatch.setitem(pipeline.SUITES, "counts", Suite(crashing, {}))
    out = tmp_path / "report.json"
    result = runner.invoke(cli, ["verify", "--suite", "counts", "--out", str(out)])
    assert result.exit_code == 1
    report = json.loads(out.read_text())
    assert report["passed"] is False
    assert report["failures"][0]["input"] == {"error": "ValueError"}


def test_verify_out_file(runner, tmp_path):
    out = tmp_path / "reports" / "moments.json"
    result = runner.invoke(cli, ["verify", "--suite", "moments", "--param", "mmax=3", "--out", str(out)])
    assert result.exit_code == 0
    assert json.loads(out.read_text())["cases"] == 4


def test_store_and_history(runner, monkeypatch, tmp_path):
    monkeypatch.setenv("DATABASE_URL", f"sqlite:///{tmp_path / 'ledger.db'}")
    assert runner.invoke(cli, ["verify", "--suite", "moments", "--param", "mmax=2", "--store"]).exit_code == 0
    result = runner.invoke(cli, ["history"])
    assert "Found 1 stored reports" in result.output
    assert "moments" in result.output
    export = tmp_path / "history.csv"
    result = runner.invoke(cli, ["history", "--suite", "moments", "--export", str(export), "--max", "all"])
    assert result.exit_code == 0
    assert export.read_text().startswith("id,suite,params")
    assert runner.invoke(cli, ["history", "--max", "many"]).exit_code == 2


def test_compute_cup_square(runner):
    result = runner.invoke(cli, ["compute", "star(cup(0), cup(0))"])
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert [part["grade"] for part in data["parts"]] == [0, 1, 2]
    assert data["parts"][0]["terms"] == [{"pairing": "{}", "scalar": "1*s^2"}]


def test_compute_examples():
    cup, one = as_graded(build_cup(0)), GradedElement.unit(0)
    assert evaluate_expression("X(cup(0))") == cup + one * DELTA
    assert evaluate_expression("bullet(cup(0), cup(0))").grades() == [2]
    assert evaluate_expression("2*cup(0) - -cup(0)") == cup * 3
    assert evaluate_expression("trace(star(cup(0), cup(0)))") == evaluate_expression("inner(cup(0), cup(0))") == DELTA
    assert evaluate_expression("gjs(cup(0), one(0))") == DELTA


def test_compute_load(runner, tmp_path):
    path = tmp_path / "u.json"
    path.write_text(runner.invoke(cli, ["compute", "cup(1)"]).output)
    result = runner.invoke(cli, ["compute", f"Y(X(load('{path}')))"])
    assert json.loads(result.output) == json.loads(path.read_text())


@pytest.mark.parametrize("expression", ["star(cup(0)", "open('x')", "cup(0) / 2", "star(cup(0), cup(1))",
                                        "jones(2, 2)", "load('/no/such/file.json')"])
def test_compute_errors(runner, expression):
    assert runner.invoke(cli, ["compute", expression]).exit_code == 2


def test_render_commands(runner, tmp_path):
    result = runner.invoke(cli, ["render", "2→0:{(B1,B2)}"])
    assert result.exit_code == 0
    assert "B1" in result.output
    out = tmp_path / "e.svg"
    result = runner.invoke(cli, ["render", "--expr", "jones(1, 2)", "--format", "svg", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "<svg" in out.read_text()
    assert runner.invoke(cli, ["render"]).exit_code == 2
    assert runner.invoke(cli, ["render", "2→2:{(B1,T2),(B2,T1)}"]).exit_code == 2
    assert runner.invoke(cli, ["render", "--expr", "star(cup(0), cup(0))"]).exit_code == 2


def test_enumerate_command(runner):
    result = runner.invoke(cli, ["enumerate", "4", "2", "--filter", "epi"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[-1] == "3 diagrams"
    assert "4→2:{(B1,B2),(B3,T1),(B4,T2)}" in lines
    assert runner.invoke(cli, ["enumerate", "3", "0"]).exit_code == 2


def test_gram_command(runner, tmp_path):
    result = runner.invoke(cli, ["gram", "1", "0"])
    assert result.exit_code == 0
    assert "min eigenvalue = 2" in result.output
    export = tmp_path / "g.csv"
    assert runner.invoke(cli, ["gram", "1", "0", "--form", "gjs", "--export", str(export)]).exit_code == 0
    assert len(export.read_text().splitlines()) == 3


def test_suite_spec_resolution():
    assert SuiteSpec("moments", {"mmax": 3}).resolved() == {"mmax": 3, "k": 1}
    report = run_suite(SuiteSpec("moments", {"mmax": 2, "k": 0}))
    assert report.passed and report.params == {"mmax": 2, "k": 0}


def test_full_battery_covers_every_suite():
    names = {spec.name for spec in full_battery()}
    assert names == set(pipeline.SUITES)
