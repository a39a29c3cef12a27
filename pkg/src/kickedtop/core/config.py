"""
Configuration management for kickedtop.

This module provides configuration management with support for:
- Validated run configurations for every experiment (pydantic models)
- Optional config files: YAML, or flat key=value files
- KICKEDTOP_* environment variable overrides
- Flag precedence over environment and file values
"""

import math
import os
from pathlib import Path
from typing import Any, Literal, Optional, TypeVar

import yaml
from dotenv import dotenv_values
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from kickedtop.core.exceptions import ConfigurationError

HALF_PI = math.pi / 2


def validate_spin(value: float) -> float:
    """Validate that a spin value is a positive multiple of 1/2.

    Args:
        value: Spin value as passed on the command line (e.g. 15.5).

    Returns:
        The spin value.

    Raises:
        ValueError: If the value is not a positive half-integer multiple.
    """
    twice = 2.0 * float(value)
    if not math.isfinite(twice) or twice != round(twice):
        raise ValueError(f"spin must be a multiple of 0.5, got {value}")
    if twice <= 0:
        raise ValueError(f"spin must be positive, got {value}")
    return float(value)


class RunConfig(BaseModel):
    """Settings shared by every run."""

    threads: int = Field(default=1, ge=1, le=512, description="Worker threads for parallel maps")
    seed: int = Field(default=0, ge=0, description="Seed for random state sampling")
    out: Path = Field(default=Path("out"), description="Output directory")
    log_level: str = Field(default="INFO", description="Console log level")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate the log level name."""
        level = v.strip().upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {v!r}")
        return level


class KappaSelection(BaseModel):
    """Mixin for runs that take either an explicit kappa or a kappa class."""

    kappa: Optional[float] = Field(default=None, description="Twist strength")
    kappa_class: Optional[str] = Field(default=None, description="Twist class such as pj or 3pj/2")
    p: float = Field(default=HALF_PI, description="Rotation angle per kick")

    @model_validator(mode="after")
    def validate_kappa_choice(self) -> "KappaSelection":
        """Require exactly one of kappa and kappa_class."""
        if (self.kappa is None) == (self.kappa_class is None):
            raise ValueError("give exactly one of kappa and kappa_class")
        return self


class PeriodConfig(RunConfig, KappaSelection):
    """Configuration for the period command."""

    j: float = Field(description="Spin")
    n_max: int = Field(default=200, ge=1, description="Kick horizon")
    tol: float = Field(default=1e-10, gt=0.0, description="Identity-error tolerance")

    @field_validator("j")
    @classmethod
    def validate_j(cls, v: float) -> float:
        """Validate the spin value."""
        return validate_spin(v)


class TableConfig(RunConfig):
    """Configuration for the table command."""

    j_min: float = Field(default=0.5, description="Smallest spin")
    j_max: float = Field(default=10.0, description="Largest spin")
    n_max: int = Field(default=500, ge=1, description="Kick horizon")
    tol: float = Field(default=1e-10, gt=0.0, description="Identity-error tolerance")

    @field_validator("j_min", "j_max")
    @classmethod
    def validate_j_bounds(cls, v: float) -> float:
        """Validate the spin bounds."""
        return validate_spin(v)

    @model_validator(mode="after")
    def validate_range(self) -> "TableConfig":
        """Require j_min <= j_max."""
        if self.j_min > self.j_max:
            raise ValueError("j_min must not exceed j_max")
        return self


class SearchRunConfig(RunConfig):
    """Configuration for the search command."""

    r_max: int = Field(default=10, ge=1, description="Largest numerator")
    s_max: int = Field(default=10, ge=1, description="Largest denominator")
    j_min: float = Field(default=1.5, description="Smallest spin")
    j_max: float = Field(default=15.5, description="Largest spin")
    n_kicks: int = Field(default=500, ge=1, description="Kick horizon")
    entropy_floor: float = Field(default=1e-7, gt=0.0, description="Candidate threshold")
    theta: float = Field(default=2.25, description="Initial polar angle")
    phi: float = Field(default=2.0, description="Initial azimuthal angle")
    tol: float = Field(default=1e-10, gt=0.0, description="Identity-error tolerance")

    @field_validator("j_min", "j_max")
    @classmethod
    def validate_j_bounds(cls, v: float) -> float:
        """Validate the spin bounds."""
        return validate_spin(v)


class HusimiConfig(RunConfig, KappaSelection):
    """Configuration for the husimi command."""

    j: float = Field(description="Spin")
    theta: float = Field(default=2.25, description="Initial polar angle")
    phi: float = Field(default=2.0, description="Initial azimuthal angle")
    state: Optional[str] = Field(default=None, description="Named initial state (+y, -z, ...)")
    kicks: list[int] = Field(default_factory=lambda: [0], description="Kicks to snapshot")
    theta_count: int = Field(default=140, ge=2, description="Polar grid size")
    phi_count: int = Field(default=280, ge=2, description="Azimuthal grid size")

    @field_validator("j")
    @classmethod
    def validate_j(cls, v: float) -> float:
        """Validate the spin value."""
        return validate_spin(v)

    @field_validator("kicks")
    @classmethod
    def validate_kicks(cls, v: list[int]) -> list[int]:
        """Kick indices must be non-negative; duplicates are dropped."""
        if any(k < 0 for k in v):
            raise ValueError("kick indices must be non-negative")
        return sorted(set(v)) or [0]


class EntropyConfig(RunConfig, KappaSelection):
    """Configuration for the entropy command."""

    j: Optional[float] = Field(default=None, description="Spin")
    theta: float = Field(default=2.25, description="Initial polar angle")
    phi: float = Field(default=2.0, description="Initial azimuthal angle")
    state: Optional[str] = Field(default=None, description="Named initial state (+y, -z, ...)")
    kicks: int = Field(default=100, ge=1, description="Number of kicks")
    kind: Literal["vn", "linear"] = Field(default="vn", description="Entropy kind")
    min_scan: bool = Field(default=False, description="Sweep j_values and export the minimum entropy per spin")
    j_values: list[float] = Field(default_factory=list, description="Spins of the minimum-entropy sweep")

    @field_validator("j")
    @classmethod
    def validate_j(cls, v: Optional[float]) -> Optional[float]:
        """Validate the spin value."""
        return None if v is None else validate_spin(v)

    @field_validator("j_values")
    @classmethod
    def validate_j_values(cls, v: list[float]) -> list[float]:
        """Every spin must be a positive half-integer multiple."""
        return [validate_spin(j) for j in v]

    @model_validator(mode="after")
    def validate_mode(self) -> "EntropyConfig":
        """Check the fields each mode needs."""
        if not self.min_scan:
            if self.j is None:
                raise ValueError("j is required unless min_scan is set")
            return self
        if not self.j_values:
            raise ValueError("min_scan needs at least one spin in j_values")
        if self.kappa_class is None:
            raise ValueError("min_scan takes a kappa class, not an explicit kappa")
        if self.state is not None:
            raise ValueError("min_scan starts from the coherent state at (theta, phi)")
        return self


class ClassicalConfig(RunConfig):
    """Configuration for the classical command."""

    kappa: float = Field(default=2.5, description="Twist strength")
    kicks: int = Field(default=150, ge=0, description="Number of kicks")
    theta_count: int = Field(default=15, ge=1, description="Initial points in theta")
    phi_count: int = Field(default=30, ge=1, description="Initial points in phi")


class StabilityConfig(RunConfig):
    """Configuration for the stability command."""

    j_values: list[float] = Field(default_factory=lambda: [15.5], description="Spins")
    kappa_class: str = Field(default="pj", description="Recurrence class of the base twist")
    delta_values: list[float] = Field(default_factory=lambda: [0.001], description="Twist perturbations")
    applications: int = Field(default=10, ge=1, description="Orbit applications averaged")
    theta_count: int = Field(default=70, ge=2, description="Polar grid size")
    phi_count: int = Field(default=140, ge=2, description="Azimuthal grid size")

    @field_validator("j_values")
    @classmethod
    def validate_j_values(cls, v: list[float]) -> list[float]:
        """Every spin must be a positive half-integer multiple."""
        if not v:
            raise ValueError("at least one spin is required")
        return [validate_spin(j) for j in v]

    @field_validator("delta_values")
    @classmethod
    def validate_delta_values(cls, v: list[float]) -> list[float]:
        """Every perturbation must be finite."""
        if not v or not all(math.isfinite(d) for d in v):
            raise ValueError("perturbations must be finite and non-empty")
        return v


class VerifyConfig(RunConfig):
    """Configuration for the verify command."""

    check: str = Field(default="all", description="Check name or 'all'")
    j_max: float = Field(default=10.0, description="Largest spin")
    parity: Literal["both", "integer", "half-integer"] = Field(default="both", description="Spins swept from 1/2")
    tol: float = Field(default=1e-10, gt=0.0, description="Deviation tolerance")

    @field_validator("j_max")
    @classmethod
    def validate_j_max(cls, v: float) -> float:
        """Validate the largest spin."""
        return validate_spin(v)


ConfigT = TypeVar("ConfigT", bound=RunConfig)


class ConfigManager:
    """Resolves run configurations from a config file, the environment and flags.

    Flags override environment variables, which override the config file,
    which overrides model defaults.
    """

    ENV_PREFIX = "KICKEDTOP_"
    LIST_SEPARATOR = ","

    def __init__(self, config_file: Optional[Path] = None) -> None:
        """Initialize the configuration manager.

        Args:
            config_file: Optional YAML or key=value config file.

        Raises:
            ConfigurationError: If the config file cannot be read.
        """
        self.config_file = config_file
        self.ignored_keys: list[str] = []
        self._file_values: dict[str, Any] = self._load_file() if config_file else {}

    def _load_file(self) -> dict[str, Any]:
        """Load the config file.

        Returns:
            Mapping of config keys to raw values.

        Raises:
            ConfigurationError: If the file is missing or malformed.
        """
        path = self.config_file
        if path is None or not path.exists():
            raise ConfigurationError(f"config file not found: {path}", key="config")

        try:
            if path.suffix.lower() in {".yaml", ".yml"}:
                with open(path, "r", encoding="utf-8") as f:
                    data = yaml.safe_load(f) or {}
                if not isinstance(data, dict):
                    raise ConfigurationError("YAML config must be a mapping", key="config")
                return {self._normalize_key(k): v for k, v in data.items()}
            values = dotenv_values(path)
            return {self._normalize_key(k): v for k, v in values.items() if v is not None}
        except yaml.YAMLError as e:
            raise ConfigurationError(f"invalid YAML in {path}: {e}", key="config") from e
        except OSError as e:
            raise ConfigurationError(f"cannot read {path}: {e}", key="config") from e

    @staticmethod
    def _normalize_key(key: str) -> str:
        """Map flag-style keys (n-max) onto field names (n_max)."""
        return str(key).strip().lower().replace("-", "_")

    def _env_values(self, fields: set[str]) -> dict[str, Any]:
        """Collect KICKEDTOP_* environment overrides for known fields."""
        values: dict[str, Any] = {}
        for name in fields:
            raw = os.getenv(f"{self.ENV_PREFIX}{name.upper()}")
            if raw is not None:
                values[name] = raw
        return values

    def _coerce_lists(self, model: type[BaseModel], values: dict[str, Any]) -> dict[str, Any]:
        """Split comma-separated strings for list-typed fields."""
        coerced = dict(values)
        for name, field in model.model_fields.items():
            raw = coerced.get(name)
            origin = getattr(field.annotation, "__origin__", None)
            if origin is list and isinstance(raw, str):
                coerced[name] = [item.strip() for item in raw.split(self.LIST_SEPARATOR) if item.strip()]
        return coerced

    def resolve(self, model: type[ConfigT], flags: dict[str, Any]) -> ConfigT:
        """Resolve a run configuration.

        Args:
            model: Configuration model class.
            flags: Command-line values; None entries are treated as unset.

        Returns:
            Validated configuration.

        Raises:
            ConfigurationError: If the merged values fail validation.
        """
        fields = set(model.model_fields)
        self.ignored_keys = sorted(set(self._file_values) - fields)
        merged: dict[str, Any] = {k: v for k, v in self._file_values.items() if k in fields}
        merged.update(self._env_values(fields))
        merged.update({self._normalize_key(k): v for k, v in flags.items() if v is not None})
        merged = self._coerce_lists(model, merged)

        try:
            return model(**merged)
        except ValidationError as e:
            first = e.errors()[0]
            key = ".".join(str(part) for part in first.get("loc", ())) or None
            raise ConfigurationError(first.get("msg", str(e)), key=key) from e
