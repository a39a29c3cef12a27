"""
Artifact writing for kickedtop.

CSV and JSON payloads are written atomically (temp file, then replace) into
the run's output directory. Floats use 17 significant digits so every value
round-trips exactly; payloads never carry timestamps, which live in the
`<stem>.meta.json` sidecar.
"""

import csv
import io
import json
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any, Optional

from kickedtop.core.exceptions import ArtifactError
from kickedtop.core.logger import get_logger
from kickedtop.core.provenance import RunRecord


def format_value(value: Any) -> str:
    """CSV text for one cell: floats at 17 significant digits, None as empty."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    if hasattr(value, "item"):
        return format_value(value.item())
    return str(value)


class ArtifactWriter:
    """Writes run artifacts under one output directory."""

    SIDECAR_SUFFIX = ".meta.json"

    def __init__(self, out_dir: Path, record: Optional[RunRecord] = None) -> None:
        """Initialize the writer.

        Args:
            out_dir: Output directory, created on first write.
            record: Run record that collects the written file names.
        """
        self.out_dir = Path(out_dir)
        self.record = record
        self.logger = get_logger("artifacts")

    def _write_text(self, name: str, content: str) -> Path:
        """Write content atomically.

        Raises:
            ArtifactError: If the directory or file cannot be written.
        """
        path = self.out_dir / name
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            temp_path = path.with_suffix(path.suffix + ".tmp")
            temp_path.write_text(content, encoding="utf-8")
            temp_path.replace(path)
        except OSError as e:
            raise ArtifactError(f"Failed to write {path}: {e}") from e

        self.logger.debug(f"Wrote {path}")
        if self.record is not None and not name.endswith(self.SIDECAR_SUFFIX):
            self.record.add_output(name)
        return path

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        """Write a CSV table.

        Args:
            name: File name relative to the output directory.
            header: Column names.
            rows: Row values.

        Returns:
            Path to the written file.
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(value) for value in row])
        return self._write_text(name, buffer.getvalue())

    def write_json(self, name: str, payload: Any) -> Path:
        """Write a JSON document with stable formatting."""
        try:
            content = json.dumps(payload, indent=2, ensure_ascii=False, allow_nan=False)
        except (TypeError, ValueError) as e:
            raise ArtifactError(f"Cannot serialize {name}: {e}") from e
        return self._write_text(name, content + "\n")

    def write_sidecar(self, stem: str) -> Path:
        """Write `<stem>.meta.json` from the run record."""
        if self.record is None:
            raise ArtifactError("no run record to write a sidecar from")
        return self.write_json(f"{stem}{self.SIDECAR_SUFFIX}", self.record.to_dict())


def read_json(path: Path) -> Any:
    """Load a JSON artifact.

    Raises:
        ArtifactError: If the file is missing or malformed.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ArtifactError(f"Failed to read {path}: {e}") from e
