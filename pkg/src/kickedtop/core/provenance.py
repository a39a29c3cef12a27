"""
Run provenance for kickedtop.

Every command writes a JSON sidecar next to its payload recording the
resolved configuration, the software versions and when the run happened.
Timestamps live only here so payload files stay byte-identical across runs.
"""

import platform
import uuid
from datetime import datetime, timezone
from typing import Any, Optional

import numpy as np
import scipy
from pydantic import BaseModel

from kickedtop import __version__


class RunRecord:
    """Describes one command invocation."""

    def __init__(
        self,
        command: str,
        config: BaseModel,
        run_id: Optional[str] = None,
        started_at: Optional[datetime] = None,
    ) -> None:
        """Initialize the run record.

        Args:
            command: CLI subcommand name.
            config: Resolved run configuration.
            run_id: Unique run identifier.
            started_at: Run start time (UTC).
        """
        self.command = command
        self.config = config
        self.run_id = run_id or uuid.uuid4().hex[:12]
        self.started_at = started_at or datetime.now(timezone.utc)
        self.outputs: list[str] = []
        self.summary: dict[str, Any] = {}

    def add_output(self, name: str) -> None:
        """Register an artifact file name produced by the run."""
        self.outputs.append(name)

    def to_dict(self) -> dict[str, Any]:
        """Convert the record to a JSON-serializable dictionary.

        Returns:
            Dictionary representation of the run.
        """
        return {
            "run_id": self.run_id,
            "command": self.command,
            "version": __version__,
            "started_at": self.started_at.isoformat(),
            "finished_at": datetime.now(timezone.utc).isoformat(),
            "config": self.config.model_dump(mode="json"),
            "outputs": self.outputs,
            "summary": self.summary,
            "environment": {
                "python": platform.python_version(),
                "numpy": np.__version__,
                "scipy": scipy.__version__,
            },
        }
