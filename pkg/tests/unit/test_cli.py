"""Unit tests for CLI module."""

import csv
import json
from pathlib import Path

import pytest
from click.testing import CliRunner
from pytest_mock import MockerFixture

from kickedtop.cli.main import (
    EXIT_IO,
    EXIT_USAGE,
    EXIT_VERIFICATION,
    cli_main,
    exit_code_for,
)
from kickedtop.core.exceptions import (
    ArtifactError,
    ConfigurationError,
    KickedTopError,
    SpinValueError,
    VerificationError,
)


def read_csv(path: Path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


@pytest.fixture
def runner() -> CliRunner:
    """CLI runner."""
    return CliRunner()


class TestCLI:
    """Test cases for the command group."""

    def test_version_command(self, runner: CliRunner) -> None:
        """Test version command."""
        result = runner.invoke(cli_main, ["version"])
        assert result.exit_code == 0
        assert "kickedtop v0.1.0" in result.output

    def test_main_group(self, runner: CliRunner) -> None:
        """Test main command group."""
        result = runner.invoke(cli_main, ["--help"])
        assert result.exit_code == 0
        for name in ("period", "table", "search", "husimi", "entropy", "classical", "stability", "verify"):
            assert name in result.output

    def test_exit_codes(self) -> None:
        """Test the mapping from errors to exit codes."""
        assert exit_code_for(ConfigurationError("x")) == EXIT_USAGE
        assert exit_code_for(SpinValueError("x")) == EXIT_USAGE
        assert exit_code_for(ArtifactError("x")) == EXIT_IO
        assert exit_code_for(VerificationError("x")) == EXIT_VERIFICATION
        assert exit_code_for(KickedTopError("x")) == 1


class TestPeriodCommand:
    """Test cases for the period command."""

    def test_period(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test period detection at kappa = 2 pi j, j = 2."""
        result = runner.invoke(cli_main, ["period", "--j", "2", "--kappa-class", "2pj", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        report = json.loads((tmp_path / "period.json").read_text(encoding="utf-8"))
        assert report["period"] == 2
        assert len(read_csv(tmp_path / "period.csv")) == 200
        meta = json.loads((tmp_path / "period.meta.json").read_text(encoding="utf-8"))
        assert meta["summary"]["period"] == 2
        assert meta["outputs"] == ["period.json", "period.csv"]
        assert list(tmp_path.glob("run_*.log"))

    def test_zero_spin(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that j = 0 is an invalid argument."""
        result = runner.invoke(cli_main, ["period", "--j", "0", "--kappa", "1", "--out", str(tmp_path)])
        assert result.exit_code == EXIT_USAGE
        assert "Error" in result.output

    def test_unknown_kappa_class(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that an unknown class is an invalid argument."""
        result = runner.invoke(cli_main, ["period", "--j", "2", "--kappa-class", "9pj", "--out", str(tmp_path)])
        assert result.exit_code == EXIT_USAGE

    @pytest.mark.parametrize("p", ["inf", "nan"])
    def test_non_finite_rotation(self, runner: CliRunner, tmp_path: Path, p: str) -> None:
        """Test that a non-finite rotation angle is an invalid argument."""
        result = runner.invoke(cli_main, ["period", "--j", "2", "--kappa", "1", "--p", p, "--out", str(tmp_path)])
        assert result.exit_code == EXIT_USAGE
        assert "p must be finite" in result.output

    def test_non_numeric_spin(self, runner: CliRunner) -> None:
        """Test that click rejects a non-numeric spin."""
        result = runner.invoke(cli_main, ["period", "--j", "abc", "--kappa", "1"])
        assert result.exit_code == EXIT_USAGE

    def test_config_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that values can come from a YAML config file."""
        config = tmp_path / "run.yaml"
        config.write_text(f"j: 1.5\nkappa-class: pj\nout: {tmp_path / 'out'}\n", encoding="utf-8")
        result = runner.invoke(cli_main, ["period", "--config", str(config)])
        assert result.exit_code == 0, result.output
        report = json.loads((tmp_path / "out" / "period.json").read_text(encoding="utf-8"))
        assert report["period"] == 12

    def test_write_failure(self, runner: CliRunner, tmp_path: Path, mocker: MockerFixture) -> None:
        """Test that an unwritable artifact exits with the I/O code."""
        mocker.patch.object(Path, "write_text", side_effect=OSError("read-only"))
        result = runner.invoke(cli_main, ["period", "--j", "1", "--kappa", "1", "--out", str(tmp_path)])
        assert result.exit_code == EXIT_IO


class TestTableCommand:
    """Test cases for the table command."""

    def test_table(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the table for j = 1..2."""
        result = runner.invoke(cli_main, ["table", "--j-min", "1", "--j-max", "2", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        rows = read_csv(tmp_path / "table.csv")
        assert len(rows) == 27
        assert all(row["match"] == "true" for row in rows)
        assert rows[1]["j"] == "1" and rows[1]["kappa_class"] == "pj/2" and rows[1]["period"] == "16"

    def test_table_mismatch(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the verification exit code when the horizon is too short."""
        result = runner.invoke(
            cli_main, ["table", "--j-min", "2", "--j-max", "2", "--n-max", "10", "--out", str(tmp_path)]
        )
        assert result.exit_code == EXIT_VERIFICATION
        assert (tmp_path / "table.csv").exists()

    def test_threads_do_not_change_output(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test byte-identical payloads with one and three threads."""
        for threads in ("1", "3"):
            result = runner.invoke(
                cli_main,
                ["table", "--j-min", "0.5", "--j-max", "1.5", "--threads", threads, "--out", str(tmp_path / threads)],
            )
            assert result.exit_code == 0, result.output
        assert (tmp_path / "1" / "table.csv").read_bytes() == (tmp_path / "3" / "table.csv").read_bytes()


class TestExperimentCommands:
    """Test cases for the remaining experiment commands."""

    def test_entropy(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that +y at j = 5/2, kappa = pi j is pure every third kick."""
        result = runner.invoke(
            cli_main,
            ["entropy", "--j", "2.5", "--kappa-class", "pj", "--state", "+y", "--kicks", "9", "--out", str(tmp_path)],
        )
        assert result.exit_code == 0, result.output
        rows = read_csv(tmp_path / "entropy.csv")
        assert [int(row["kick"]) for row in rows] == list(range(10))
        for kick in (0, 3, 6, 9):
            assert float(rows[kick]["entropy"]) < 1e-10

    def test_entropy_min_scan(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the minimum-entropy export at kappa = pi j / 2 over half-integer spins."""
        args = ["entropy", "--min-scan", "--j-values", "1.5,2.5", "--kappa-class", "pj/2", "--kicks", "50"]
        result = runner.invoke(cli_main, args + ["--threads", "2", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        rows = read_csv(tmp_path / "min_entropy.csv")
        assert [float(row["j"]) for row in rows] == [1.5, 2.5]
        assert all(float(row["min_entropy"]) > 1e-5 for row in rows)
        assert all(1 <= int(row["kick"]) <= 50 for row in rows)
        assert not (tmp_path / "entropy.csv").exists()
        meta = json.loads((tmp_path / "entropy.meta.json").read_text(encoding="utf-8"))
        assert meta["summary"]["spins"] == 2

    def test_entropy_min_scan_needs_class(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that the sweep rejects an explicit kappa."""
        args = ["entropy", "--min-scan", "--j-values", "1.5", "--kappa", "1", "--out", str(tmp_path)]
        assert runner.invoke(cli_main, args).exit_code == EXIT_USAGE

    def test_entropy_haar_seeded(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that a seeded Haar state gives identical output."""
        for name in ("a", "b"):
            args = ["entropy", "--j", "3", "--kappa", "2.5", "--state", "haar", "--seed", "4", "--kicks", "5"]
            result = runner.invoke(cli_main, args + ["--out", str(tmp_path / name)])
            assert result.exit_code == 0, result.output
        assert (tmp_path / "a" / "entropy.csv").read_bytes() == (tmp_path / "b" / "entropy.csv").read_bytes()

    def test_unknown_state(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that an unknown named state is an invalid argument."""
        result = runner.invoke(
            cli_main, ["entropy", "--j", "2", "--kappa", "1", "--state", "up", "--out", str(tmp_path)]
        )
        assert result.exit_code == EXIT_USAGE

    def test_husimi(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test Husimi snapshots with their summary."""
        args = ["husimi", "--j", "10", "--kappa-class", "pj", "--kicks", "0", "--kicks", "1"]
        args += ["--theta-count", "30", "--phi-count", "60", "--out", str(tmp_path)]
        result = runner.invoke(cli_main, args)
        assert result.exit_code == 0, result.output
        assert len(read_csv(tmp_path / "husimi_k0.csv")) == 1800
        assert len(read_csv(tmp_path / "husimi_k1.csv")) == 1800
        meta = json.loads((tmp_path / "husimi.meta.json").read_text(encoding="utf-8"))
        for snapshot in meta["summary"]["snapshots"].values():
            assert snapshot["normalization"] == pytest.approx(1.0, abs=1e-6)

    def test_classical(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test classical trajectories."""
        args = ["classical", "--kicks", "5", "--theta-count", "2", "--phi-count", "3", "--out", str(tmp_path)]
        result = runner.invoke(cli_main, args)
        assert result.exit_code == 0, result.output
        rows = read_csv(tmp_path / "classical.csv")
        assert len(rows) == 6 * 6
        assert {row["traj_id"] for row in rows} == {str(i) for i in range(6)}

    def test_stability(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test stability landscapes and their summary."""
        args = ["stability", "--j-values", "1.5", "--delta-values", "0,0.5", "--applications", "2"]
        args += ["--theta-count", "4", "--phi-count", "6", "--out", str(tmp_path)]
        result = runner.invoke(cli_main, args)
        assert result.exit_code == 0, result.output
        assert len(read_csv(tmp_path / "stability_j1.5_d0.csv")) == 24
        metadata = json.loads((tmp_path / "stability_j1.5_d0.5.json").read_text(encoding="utf-8"))
        assert metadata["orbit_n"] == 12
        summary = read_csv(tmp_path / "stability_summary.csv")
        assert len(summary) == 2
        assert float(summary[0]["s_max"]) < 1e-10

    def test_stability_rejects_non_recurrence_class(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that pj/2 at half-integer j is an invalid argument."""
        args = ["stability", "--j-values", "1.5", "--kappa-class", "pj/2", "--out", str(tmp_path)]
        assert runner.invoke(cli_main, args).exit_code == EXIT_USAGE

    def test_search(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test a small rational-twist search."""
        args = ["search", "--r-max", "2", "--s-max", "2", "--j-min", "1.5", "--j-max", "1.5", "--n-kicks", "60"]
        result = runner.invoke(cli_main, args + ["--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        rows = read_csv(tmp_path / "search.csv")
        assert [(row["r"], row["s"]) for row in rows] == [("1", "1"), ("1", "2"), ("2", "1")]
        assert rows[0]["period"] == "12"


class TestVerifyCommand:
    """Test cases for the verify command."""

    def test_verify_all(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test every check up to j = 2."""
        result = runner.invoke(cli_main, ["verify", "--j-max", "2", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        rows = json.loads((tmp_path / "verify.json").read_text(encoding="utf-8"))
        assert rows
        assert all(row["pass"] for row in rows)
        assert {"name", "j", "max_deviation", "tolerance", "pass"} == set(rows[0])

    def test_verify_failure(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the verification exit code."""
        args = ["verify", "--check", "U4_U6", "--j-max", "1", "--tol", "1e-300", "--out", str(tmp_path)]
        assert runner.invoke(cli_main, args).exit_code == EXIT_VERIFICATION

    def test_integer_only_check_needs_integer_sweep(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that a named integer-only check rejects a mixed sweep."""
        args = ["verify", "--check", "gaussian_sum_pij2", "--j-max", "3", "--out", str(tmp_path)]
        assert runner.invoke(cli_main, args).exit_code == EXIT_USAGE

    def test_integer_parity_sweep(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test a named integer-only check over integer spins."""
        args = ["verify", "--check", "gaussian_sum_pij2", "--j-max", "3", "--parity", "integer", "--out", str(tmp_path)]
        result = runner.invoke(cli_main, args)
        assert result.exit_code == 0, result.output
        rows = json.loads((tmp_path / "verify.json").read_text(encoding="utf-8"))
        assert [row["j"] for row in rows] == [1.0, 2.0, 3.0]

    def test_excluded_spins_in_summary(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that a full run records the spins integer-only checks left out."""
        result = runner.invoke(cli_main, ["verify", "--j-max", "1.5", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        meta = json.loads((tmp_path / "verify.meta.json").read_text(encoding="utf-8"))
        assert meta["summary"]["excluded_j"]["gaussian_sum_pij2"] == [0.5, 1.5]

    def test_unknown_check(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that an unknown check name is an invalid argument."""
        args = ["verify", "--check", "no_such_check", "--out", str(tmp_path)]
        assert runner.invoke(cli_main, args).exit_code == EXIT_USAGE
