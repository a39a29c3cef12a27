"""
Base exception classes for kickedtop.

This module defines the exception hierarchy for kickedtop, providing
specific exception types for the error conditions of the simulation
library and the command-line surface.
"""

from typing import Any, Optional


class KickedTopError(Exception):
    """Base exception for all kickedtop errors."""

    def __init__(self, message: str) -> None:
        """Initialize the exception with a message.

        Args:
            message: Error message describing what went wrong.
        """
        self.message = message
        super().__init__(self.message)


class ConfigurationError(KickedTopError):
    """Raised when a run configuration or command-line flag is invalid."""

    def __init__(self, message: str, key: Optional[str] = None) -> None:
        """Initialize the error.

        Args:
            message: Error message.
            key: Offending configuration key or flag name, if known.
        """
        self.key = key
        super().__init__(f"{key}: {message}" if key else message)


class SpinValueError(KickedTopError):
    """Raised when a spin value is not allowed for an operation."""

    pass


class DimensionMismatchError(KickedTopError):
    """Raised when operator and state dimensions disagree."""

    pass


class ArtifactError(KickedTopError):
    """Raised when writing or reading an output artifact fails."""

    pass


class VerificationError(KickedTopError):
    """Raised when an identity check or a recurrence table does not hold."""

    def __init__(self, message: str, failures: Optional[list[Any]] = None) -> None:
        """Initialize the error.

        Args:
            message: Error message.
            failures: The failing checks or table rows.
        """
        self.failures = failures or []
        super().__init__(message)
