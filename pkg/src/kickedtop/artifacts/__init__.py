"""CSV and JSON artifact writers."""

from kickedtop.artifacts.writer import ArtifactWriter, format_value, read_json

__all__ = ["ArtifactWriter", "format_value", "read_json"]
