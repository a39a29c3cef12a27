"""Core infrastructure for kickedtop: config, errors, logging, provenance, workers."""

from kickedtop.core.config import ConfigManager, RunConfig
from kickedtop.core.exceptions import (
    ArtifactError,
    ConfigurationError,
    DimensionMismatchError,
    KickedTopError,
    SpinValueError,
    VerificationError,
)
from kickedtop.core.logger import LoggerManager, get_logger
from kickedtop.core.parallel import WorkerPool

__all__ = [
    "ArtifactError",
    "ConfigManager",
    "ConfigurationError",
    "DimensionMismatchError",
    "KickedTopError",
    "LoggerManager",
    "RunConfig",
    "SpinValueError",
    "VerificationError",
    "WorkerPool",
    "get_logger",
]
