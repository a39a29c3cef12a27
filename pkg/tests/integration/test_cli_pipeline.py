"""Integration tests for complete CLI runs."""

import json
from pathlib import Path

from click.testing import CliRunner

from kickedtop.artifacts.writer import read_json
from kickedtop.cli.main import cli_main


class TestCLIPipeline:
    """End-to-end runs sharing one output directory."""

    def test_runs_share_output_directory(self, tmp_path: Path) -> None:
        """Test that successive commands keep their own artifacts and sidecars."""
        runner = CliRunner()
        commands = [
            ["table", "--j-min", "0.5", "--j-max", "1"],
            ["verify", "--check", "U4_U6,kappa_shift_symmetry", "--j-max", "1.5"],
            ["entropy", "--j", "1.5", "--kappa-class", "pj", "--kicks", "12"],
        ]
        for args in commands:
            result = runner.invoke(cli_main, args + ["--out", str(tmp_path), "--threads", "2"])
            assert result.exit_code == 0, result.output

        for stem in ("table", "verify", "entropy"):
            meta = read_json(tmp_path / f"{stem}.meta.json")
            assert meta["command"] == stem
            assert meta["config"]["threads"] == 2
            for name in meta["outputs"]:
                assert (tmp_path / name).exists()
        assert len(list(tmp_path.glob("run_*.log"))) == 3

    def test_table_json_matches_csv(self, tmp_path: Path) -> None:
        """Test that the JSON table carries the same cells as the CSV."""
        result = CliRunner().invoke(cli_main, ["table", "--j-min", "1.5", "--j-max", "1.5", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        rows = json.loads((tmp_path / "table.json").read_text(encoding="utf-8"))
        assert [row["kappa_class"] for row in rows] == ["0", "pj/2", "pj", "3pj/2", "2pj", "5pj/2", "3pj", "7pj/2", "4pj"]
        assert [row["period"] for row in rows] == [4, None, 12, None, 4, None, 12, None, 4]
        csv_lines = (tmp_path / "table.csv").read_text(encoding="utf-8").splitlines()
        assert len(csv_lines) == 1 + len(rows)

    def test_env_overrides_defaults(self, tmp_path: Path) -> None:
        """Test that KICKEDTOP_ variables configure a run."""
        env = {"KICKEDTOP_J": "2", "KICKEDTOP_KAPPA_CLASS": "2pj", "KICKEDTOP_OUT": str(tmp_path)}
        result = CliRunner().invoke(cli_main, ["period"], env=env)
        assert result.exit_code == 0, result.output
        assert read_json(tmp_path / "period.json")["period"] == 2
