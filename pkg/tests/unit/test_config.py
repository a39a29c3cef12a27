"""Unit tests for configuration management."""

import os
import tempfile
from pathlib import Path

import pytest

from kickedtop.core.config import (
    ConfigManager,
    EntropyConfig,
    HusimiConfig,
    PeriodConfig,
    RunConfig,
    StabilityConfig,
    TableConfig,
    validate_spin,
)
from kickedtop.core.exceptions import ConfigurationError


@pytest.fixture(autouse=True)
def clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Drop KICKEDTOP_* overrides that could leak in from the shell."""
    for name in list(os.environ):
        if name.startswith("KICKEDTOP_"):
            monkeypatch.delenv(name, raising=False)


class TestValidateSpin:
    """Test cases for spin validation."""

    def test_half_integer_multiples(self) -> None:
        """Test that multiples of 1/2 are accepted."""
        assert validate_spin(0.5) == 0.5
        assert validate_spin(15.5) == 15.5
        assert validate_spin(3) == 3.0

    def test_rejects_zero_and_fractions(self) -> None:
        """Test that zero, negatives and other fractions are rejected."""
        for value in (0.0, -1.0, 0.3, float("nan")):
            with pytest.raises(ValueError):
                validate_spin(value)


class TestRunConfig:
    """Test cases for the shared run configuration."""

    def test_defaults(self) -> None:
        """Test default values."""
        config = RunConfig()
        assert config.threads == 1
        assert config.seed == 0
        assert config.out == Path("out")
        assert config.log_level == "INFO"

    def test_log_level_normalized(self) -> None:
        """Test that log levels are upper-cased and validated."""
        assert RunConfig(log_level="debug").log_level == "DEBUG"
        with pytest.raises(ValueError):
            RunConfig(log_level="loud")


class TestConfigManager:
    """Test cases for ConfigManager."""

    def test_flags_only(self) -> None:
        """Test resolving from flags alone."""
        config = ConfigManager().resolve(PeriodConfig, {"j": 2.0, "kappa_class": "pj", "n_max": None})
        assert config.j == 2.0
        assert config.kappa_class == "pj"
        assert config.n_max == 200

    def test_yaml_file(self) -> None:
        """Test loading values from a YAML file with flag-style keys."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "run.yaml"
            path.write_text("j: 1.5\nkappa-class: pj\nn-max: 40\n", encoding="utf-8")
            config = ConfigManager(path).resolve(PeriodConfig, {})
            assert config.j == 1.5
            assert config.n_max == 40

    def test_key_value_file(self) -> None:
        """Test loading values from a key=value file."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "run.env"
            path.write_text("J_MIN=1\nJ_MAX=2\nN_MAX=60\n", encoding="utf-8")
            config = ConfigManager(path).resolve(TableConfig, {})
            assert config.j_min == 1.0
            assert config.j_max == 2.0
            assert config.n_max == 60

    def test_precedence(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test flags > environment > file > defaults."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "run.yaml"
            path.write_text("j: 2\nkappa: 1.0\nn_max: 50\ntol: 1.0e-8\nseed: 3\n", encoding="utf-8")
            monkeypatch.setenv("KICKEDTOP_N_MAX", "60")
            monkeypatch.setenv("KICKEDTOP_TOL", "1e-9")
            manager = ConfigManager(path)
            config = manager.resolve(PeriodConfig, {"n_max": 70})
            assert config.n_max == 70
            assert config.tol == 1e-9
            assert config.seed == 3
            assert config.threads == 1

    def test_ignored_keys(self) -> None:
        """Test that unknown file keys are reported, not rejected."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "run.yaml"
            path.write_text("j: 2\nkappa: 1.0\nfavourite_colour: blue\n", encoding="utf-8")
            manager = ConfigManager(path)
            manager.resolve(PeriodConfig, {})
            assert manager.ignored_keys == ["favourite_colour"]

    def test_list_fields_from_strings(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test comma-separated strings for list-typed fields."""
        monkeypatch.setenv("KICKEDTOP_DELTA_VALUES", "0, 0.001")
        config = ConfigManager().resolve(StabilityConfig, {"j_values": "1.5, 2"})
        assert config.j_values == [1.5, 2.0]
        assert config.delta_values == [0.0, 0.001]

    def test_invalid_spin_names_key(self) -> None:
        """Test that a bad spin is reported against its key."""
        with pytest.raises(ConfigurationError) as exc_info:
            ConfigManager().resolve(PeriodConfig, {"j": 0.0, "kappa": 1.0})
        assert exc_info.value.key == "j"

    def test_kappa_choice_is_exclusive(self) -> None:
        """Test that kappa and kappa_class cannot both be given, or both omitted."""
        with pytest.raises(ConfigurationError):
            ConfigManager().resolve(PeriodConfig, {"j": 1.0, "kappa": 1.0, "kappa_class": "pj"})
        with pytest.raises(ConfigurationError):
            ConfigManager().resolve(PeriodConfig, {"j": 1.0})

    def test_table_range_order(self) -> None:
        """Test that j_min above j_max is rejected."""
        with pytest.raises(ConfigurationError):
            ConfigManager().resolve(TableConfig, {"j_min": 3.0, "j_max": 1.0})

    def test_missing_file(self) -> None:
        """Test that a missing config file is a configuration error."""
        with pytest.raises(ConfigurationError) as exc_info:
            ConfigManager(Path("/nonexistent/kickedtop.yaml"))
        assert exc_info.value.key == "config"

    def test_malformed_yaml(self) -> None:
        """Test that unparsable or non-mapping YAML is rejected."""
        with tempfile.TemporaryDirectory() as tmpdir:
            broken = Path(tmpdir) / "broken.yaml"
            broken.write_text("j: [1, 2\n", encoding="utf-8")
            with pytest.raises(ConfigurationError):
                ConfigManager(broken)

            listing = Path(tmpdir) / "list.yaml"
            listing.write_text("- 1\n- 2\n", encoding="utf-8")
            with pytest.raises(ConfigurationError):
                ConfigManager(listing)


class TestHusimiConfig:
    """Test cases for the husimi configuration."""

    def test_kicks_sorted_and_deduplicated(self) -> None:
        """Test kick list normalization."""
        config = HusimiConfig(j=2.0, kappa=1.0, kicks=[4, 0, 4])
        assert config.kicks == [0, 4]

    def test_negative_kick_rejected(self) -> None:
        """Test that negative kicks are rejected."""
        with pytest.raises(ValueError):
            HusimiConfig(j=2.0, kappa=1.0, kicks=[-1])


class TestEntropyConfig:
    """Test cases for the entropy configuration."""

    def test_single_trajectory_needs_spin(self) -> None:
        """Test that j is required without the sweep."""
        with pytest.raises(ValueError):
            EntropyConfig(kappa=1.0)

    def test_min_scan_from_strings(self) -> None:
        """Test the sweep mode with comma-separated spins."""
        config = ConfigManager().resolve(
            EntropyConfig, {"min_scan": True, "j_values": "1.5,2.5", "kappa_class": "pj/2"}
        )
        assert config.j is None
        assert config.j_values == [1.5, 2.5]

    @pytest.mark.parametrize(
        "flags",
        [
            {"min_scan": True, "kappa_class": "pj/2"},
            {"min_scan": True, "j_values": "1.5", "kappa": 1.0},
            {"min_scan": True, "j_values": "1.5", "kappa_class": "pj", "state": "+y"},
            {"min_scan": True, "j_values": "1.25", "kappa_class": "pj"},
        ],
    )
    def test_min_scan_rejected(self, flags: dict[str, object]) -> None:
        """Test the sweep mode's required fields."""
        with pytest.raises(ConfigurationError):
            ConfigManager().resolve(EntropyConfig, flags)
