import json

import pytest
from click.testing import CliRunner

from dihom.cli import cli
from dihom.common.types import WedgeCase
from dihom.core.strat import builtin_model

GLOBE1 = '{"builtin": "globe", "params": [1]}'


@pytest.fixture
def runner():
    return CliRunner()


def _report(result):
    return json.loads(result.stdout)


def test_hom_reports_elements(runner):
    result = runner.invoke(cli, ["hom", "[[]]", GLOBE1])
    assert result.exit_code == 0
    report = _report(result)
    assert report["check"] == "hom"
    assert report["cases"][0]["sizes"]["hom"] == 3
    assert len(report["cases"][0]["details"]["elements"]) == 3


@pytest.mark.parametrize("args", [
    ["hom", "[[", GLOBE1],
    ["hom", "[[]]", '{"builtin": "torus"}'],
    ["check-dold-thom", "builtin:nope", "1", "3"],
    ["check-sphere", "--coeff", "bogus"],
    ["check-hurewicz", "2", "--coeff", "freeC:2"],
    ["nmod", "builtin:point", "--degree", "9"],
])
def test_domain_errors_exit_2(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == 2
    assert "Error:" in result.output


def test_usage_errors_exit_2(runner):
    assert runner.invoke(cli, ["check-wedge", "0", "1"]).exit_code == 2


@pytest.mark.parametrize("args", [
    ["nerve", GLOBE1, "--max-dim", "1", "--max-edges", "2"],
    ["check-wedge", "1", "2", "--max-dim", "2", "--max-edges", "3"],
    ["check-wedge", "2", "2", "--max-dim", "2", "--max-edges", "2"],
    ["check-disks", "1", "2", "--max-dim", "1", "--max-edges", "2"],
    ["check-dold-thom", "builtin:s1", "1", "3"],
    ["check-sphere", "--coeff", "Z2"],
    ["check-hurewicz", "2", "--coeff", "Z2"],
    ["sp", "builtin:figure-eight", "--degree", "1", "--stage", "3"],
    ["ho1", "builtin:s1", "--coeff", "Z2", "--bound", "4", "--word-bound", "4"],
])
def test_passing_checks_exit_0(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    assert _report(result)["verdict"] == "pass"


def test_nmod_lists_reduced_combinations(runner):
    result = runner.invoke(cli, ["nmod", "builtin:figure-eight", "--degree", "1", "--bound", "2", "--reduced"])
    assert result.exit_code == 0
    assert _report(result)["cases"][0]["sizes"]["elements"] == 6


def test_failing_check_exits_1(runner, monkeypatch):
    broken = WedgeCase(theta=[], lhs=1, rhs=2, image=1, injective=True, surjective=False)
    monkeypatch.setattr("dihom.checks.wedge.wedge_compare", lambda *args: [broken])
    result = runner.invoke(cli, ["check-wedge", "1", "1"])
    assert result.exit_code == 1
    assert _report(result)["verdict"] == "fail"


def test_json_out_writes_file(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(cli, ["check-dold-thom", "builtin:s1", "1", "2", "--json-out", str(out)])
    assert result.exit_code == 0
    assert str(out) in result.stdout
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["schema"] == 1
    assert report["parameters"] == {"model": "S1", "degree": 1, "stage": 2}


def test_summary_table(runner):
    result = runner.invoke(cli, ["hom", "[[],[]]", GLOBE1, "--summary"])
    assert result.exit_code == 0
    assert "size:hom" in result.output


def test_model_from_file(runner, tmp_path):
    path = tmp_path / "circle.json"
    path.write_text(json.dumps(builtin_model("s1", dim=3).to_json()))
    result = runner.invoke(cli, ["check-dold-thom", str(path), "2", "2"])
    assert result.exit_code == 0, result.output


def test_output_is_deterministic(runner):
    args = ["check-disks", "1", "2", "--max-dim", "1", "--max-edges", "2"]
    first, second = (_report(runner.invoke(cli, args)) for _ in range(2))
    first.pop("wall_time")
    second.pop("wall_time")
    assert first == second
