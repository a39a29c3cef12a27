"""
Per-command run plumbing: resolved config, logging, provenance and output.
"""

from pathlib import Path
from typing import Any, Generic, Optional

from kickedtop.artifacts.writer import ArtifactWriter
from kickedtop.cli.ui.components import render_outputs
from kickedtop.core.config import ConfigManager, ConfigT
from kickedtop.core.logger import LoggerManager, get_logger
from kickedtop.core.parallel import WorkerPool
from kickedtop.core.provenance import RunRecord


class RunSession(Generic[ConfigT]):
    """Everything one CLI command needs while it runs.

    Use as a context manager; on exit the worker pool is joined and the log
    file released.
    """

    def __init__(
        self,
        command: str,
        model: type[ConfigT],
        flags: dict[str, Any],
        config_file: Optional[Path] = None,
    ) -> None:
        """Resolve the configuration and set up logging and output.

        Args:
            command: Subcommand name.
            model: Configuration model for the subcommand.
            flags: Command-line values, None where not given.
            config_file: Optional config file.

        Raises:
            ConfigurationError: If the configuration is invalid.
        """
        manager = ConfigManager(config_file)
        self.config: ConfigT = manager.resolve(model, flags)
        self.record = RunRecord(command, self.config)
        self.logger_manager = LoggerManager(
            level=self.config.log_level,
            log_dir=self.config.out,
            run_id=self.record.run_id,
        )
        self.logger = get_logger(f"cli.{command}")
        for key in manager.ignored_keys:
            self.logger.warning(f"Ignoring config key {key!r}, not used by {command}")
        self.writer = ArtifactWriter(self.config.out, self.record)
        self.pool = WorkerPool(self.config.threads)
        self.logger.info(f"Run {self.record.run_id}: {command} -> {self.config.out}")

    def finish(self, stem: str, summary: Optional[dict[str, Any]] = None) -> None:
        """Write the provenance sidecar and list the outputs."""
        if summary:
            self.record.summary.update(summary)
        self.writer.write_sidecar(stem)
        render_outputs(self.config.out, self.record.outputs)

    def close(self) -> None:
        """Release the pool and the log file."""
        self.pool.shutdown()
        self.logger_manager.close()

    def __enter__(self) -> "RunSession[ConfigT]":
        """Context manager entry."""
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        """Context manager exit."""
        self.close()
