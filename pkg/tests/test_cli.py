"""Tests for the command-line interface."""

import json
import math

import pytest
from click.testing import CliRunner

from ers_tznn import __version__
from ers_tznn.cli import EXIT_CONFIG, EXIT_FAILURE, cli
from ers_tznn.session import REPORT_FILE, TRACE_FILE, VERIFY_FILE

SPRL = ["--law", "SPRL", "-p", "kappa=1", "-p", "gamma=0.5"]


@pytest.fixture
def runner():
    return CliRunner()


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


class TestSettle:
    """ers settle"""

    def test_rows_written(self, runner, tmp_path):
        out = tmp_path / "rows.json"
        result = runner.invoke(cli, ["settle", *SPRL, "--e0", "4", "--out", str(out)])
        assert result.exit_code == 0, result.output
        rows = json.loads(out.read_text())
        assert [row["formula_id"] for row in rows] == ["sprr1.ts"]
        assert rows[0]["time"] == pytest.approx(4.0)
        assert rows[0]["kind"] == "exact"

    def test_uniform_bound(self, runner, tmp_path):
        out = tmp_path / "rows.json"
        args = ["settle", "--law", "DPRL", "-p", "kappa1=1", "-p", "kappa2=1",
                "-p", "gamma1=0.5", "-p", "gamma2=1.5", "--e0", "inf", "--out", str(out)]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.output
        rows = json.loads(out.read_text())
        assert rows[0]["formula_id"] == "key.ts.bound.2"
        assert rows[0]["time"] == pytest.approx(math.pi)

    def test_bad_parameter_is_config_error(self, runner):
        args = ["settle", "--law", "SPRL", "-p", "kappa=-1", "-p", "gamma=0.5"]
        result = runner.invoke(cli, args)
        assert result.exit_code == EXIT_CONFIG

    def test_malformed_param(self, runner):
        result = runner.invoke(cli, ["settle", "--law", "SPRL", "-p", "kappa"])
        assert result.exit_code == EXIT_CONFIG

    def test_from_config(self, runner, scenario_file, tmp_path):
        out = tmp_path / "rows.json"
        result = runner.invoke(cli, ["settle", "--config", str(scenario_file), "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert [row["e0"] for row in json.loads(out.read_text())] == [4.0]


class TestSimulate:
    """ers simulate"""

    def test_writes_trace_and_report(self, runner, tmp_path):
        args = ["simulate", *SPRL, "--e0", "4", "--dt", "1e-3", "--horizon", "6",
                "--out", str(tmp_path)]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.output
        run_dir = tmp_path / "scalar-SPRL"
        assert (run_dir / TRACE_FILE).exists()
        report = json.loads((run_dir / REPORT_FILE).read_text())
        assert report["pass"] is True
        assert report["analytic"]["formula_id"] == "sprr1.ts"

    def test_failed_criterion_exit_code(self, runner, tmp_path):
        args = ["simulate", *SPRL, "--e0", "4", "--dt", "1e-3", "--horizon", "2",
                "--out", str(tmp_path)]
        result = runner.invoke(cli, args)
        assert result.exit_code == EXIT_FAILURE

    def test_invalid_config_file(self, runner, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("scenarios: [")
        result = runner.invoke(cli, ["simulate", "--config", str(path), "--out", str(tmp_path)])
        assert result.exit_code == EXIT_CONFIG

    def test_missing_initial_error(self, runner, tmp_path):
        result = runner.invoke(cli, ["simulate", *SPRL, "--out", str(tmp_path)])
        assert result.exit_code == EXIT_CONFIG


class TestQp:
    """ers qp"""

    def test_benchmark_default(self, runner, tmp_path):
        result = runner.invoke(
            cli, ["qp", "--dt", "1e-3", "--horizon", "4", "--out", str(tmp_path)]
        )
        assert result.exit_code == 0, result.output
        header = (tmp_path / "benchmark-DPRL" / TRACE_FILE).read_text().splitlines()[0]
        assert header.startswith("t,z_1,z_2,z_3,e_1")

    def test_config_without_qp(self, runner, tmp_path):
        path = tmp_path / "scalar.yaml"
        path.write_text("name: s\nproblem: {type: scalar, e0: 1.0}\n"
                        "law: {type: SPRL, kappa: 1, gamma: 0.5}\n")
        result = runner.invoke(cli, ["qp", "--config", str(path), "--out", str(tmp_path)])
        assert result.exit_code == EXIT_CONFIG


class TestVerifyAndReport:
    """ers verify and ers report"""

    def test_verify_subset(self, runner, tmp_path):
        result = runner.invoke(cli, ["verify", "--only", "14", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        data = json.loads((tmp_path / VERIFY_FILE).read_text())
        assert [check["criterion"] for check in data["checks"]] == [14]

    def test_verify_unknown_check(self, runner, tmp_path):
        result = runner.invoke(cli, ["verify", "--only", "nope", "--out", str(tmp_path)])
        assert result.exit_code == EXIT_CONFIG

    def test_report_empty(self, runner, tmp_path):
        result = runner.invoke(cli, ["report", "--out", str(tmp_path)])
        assert result.exit_code == 0
        assert "No reports found" in result.output

    def test_report_malformed_verification(self, runner, tmp_path):
        (tmp_path / VERIFY_FILE).write_text("{not json")
        result = runner.invoke(cli, ["report", "--out", str(tmp_path)])
        assert result.exit_code == EXIT_CONFIG

    def test_report_after_runs(self, runner, tmp_path):
        runner.invoke(cli, ["simulate", *SPRL, "--e0", "4", "--dt", "1e-3", "--horizon", "6",
                            "--out", str(tmp_path)])
        runner.invoke(cli, ["verify", "--only", "1", "--out", str(tmp_path)])
        result = runner.invoke(cli, ["report", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        assert "No reports found" not in result.output
