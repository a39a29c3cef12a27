"""
Helper utilities for kickedtop.

Provides small formatting functions used by the command-line surface.
"""

import math
from typing import Optional, Union


def sanitize_filename(filename: str) -> str:
    """Sanitize a filename to be safe for the filesystem.

    Args:
        filename: Original filename.

    Returns:
        Sanitized filename.
    """
    invalid_chars = '<>:"/\\|?* '
    sanitized = filename
    for char in invalid_chars:
        sanitized = sanitized.replace(char, "_")

    sanitized = sanitized.strip(". ")
    return sanitized or "untitled"


def format_number(value: float) -> str:
    """Compact text for a parameter value (15.5, 0.001, 1e-05)."""
    return f"{value:g}"


def artifact_stem(prefix: str, **parts: Union[float, int, str]) -> str:
    """Build a file stem such as stability_j15.5_d0.001.

    Args:
        prefix: Leading name.
        **parts: Tag and value pairs, in order.

    Returns:
        Filesystem-safe stem.
    """
    pieces = [prefix]
    for tag, value in parts.items():
        text = format_number(value) if isinstance(value, float) else str(value)
        pieces.append(f"{tag}{text}")
    return sanitize_filename("_".join(pieces))


def format_phase(phase: Optional[float]) -> str:
    """A phase in units of pi, e.g. -0.5 pi; a dash when missing."""
    if phase is None:
        return "-"
    return f"{phase / math.pi:+.4f} pi"


def format_optional(value: Optional[int]) -> str:
    """An integer, or 'none'."""
    return "none" if value is None else str(value)
