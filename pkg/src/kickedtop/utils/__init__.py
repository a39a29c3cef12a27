"""Utility functions for kickedtop."""

from kickedtop.utils.helpers import artifact_stem, format_number, format_optional, format_phase, sanitize_filename

__all__ = ["artifact_stem", "format_number", "format_optional", "format_phase", "sanitize_filename"]
