"""
Logging system for kickedtop.

Provides console logging through rich and an optional per-run log file
written next to the run's artifacts.
"""

import logging
from datetime import datetime
from pathlib import Path
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

LOGGER_NAME = "kickedtop"


class LoggerManager:
    """Manages logging configuration for kickedtop."""

    RUN_LOG_PREFIX = "run_"

    def __init__(
        self,
        level: str = "INFO",
        log_dir: Optional[Path] = None,
        run_id: Optional[str] = None,
        console: Optional[Console] = None,
    ) -> None:
        """Initialize the logger manager.

        Args:
            level: Console logging level name.
            log_dir: Directory for the run log file. No file is written if None.
            run_id: Identifier used in the run log file name.
            console: Rich console to log to. Defaults to stderr.
        """
        self.log_dir = log_dir
        self.run_id = run_id or self._generate_run_id()
        self.logger = logging.getLogger(LOGGER_NAME)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        # Remove existing handlers
        for handler in list(self.logger.handlers):
            handler.close()
        self.logger.handlers.clear()

        self._setup_handlers(console or Console(stderr=True))
        self.set_level(level)

    def _generate_run_id(self) -> str:
        """Generate a run identifier from the current time.

        Returns:
            Run ID string.
        """
        return datetime.now().strftime("%Y%m%d_%H%M%S")

    def _setup_handlers(self, console: Console) -> None:
        """Set up the console handler and, if requested, the file handler."""
        console_handler = RichHandler(console=console, show_path=False, rich_tracebacks=True)
        console_handler.setFormatter(logging.Formatter("%(message)s"))
        self.logger.addHandler(console_handler)

        if self.log_dir is None:
            return

        self.log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(self.get_run_log_path(), encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(
            logging.Formatter("%(asctime)s [%(levelname)s] %(name)s: %(message)s", datefmt="%Y-%m-%d %H:%M:%S")
        )
        self.logger.addHandler(file_handler)

    def get_logger(self, name: Optional[str] = None) -> logging.Logger:
        """Get a logger instance.

        Args:
            name: Optional logger name. If None, returns the main logger.

        Returns:
            Logger instance.
        """
        if name:
            return logging.getLogger(f"{LOGGER_NAME}.{name}")
        return self.logger

    def set_level(self, level: str) -> None:
        """Set the console logging level.

        Args:
            level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL).

        Raises:
            ValueError: If level is invalid.
        """
        numeric_level = getattr(logging, level.upper(), None)
        if not isinstance(numeric_level, int):
            raise ValueError(f"Invalid log level: {level}")

        for handler in self.logger.handlers:
            if isinstance(handler, RichHandler):
                handler.setLevel(numeric_level)

    def get_run_log_path(self) -> Optional[Path]:
        """Get the path to the current run log file.

        Returns:
            Path to the run log file, or None if file logging is off.
        """
        if self.log_dir is None:
            return None
        return self.log_dir / f"{self.RUN_LOG_PREFIX}{self.run_id}.log"

    def close(self) -> None:
        """Close and detach every handler."""
        for handler in list(self.logger.handlers):
            handler.close()
        self.logger.handlers.clear()

    def __enter__(self) -> "LoggerManager":
        """Context manager entry.

        Returns:
            Self for use in 'with' statement.
        """
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        """Context manager exit; releases the log file."""
        self.close()


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Get a logger instance (convenience function).

    Args:
        name: Optional logger name.

    Returns:
        Logger instance.
    """
    return logging.getLogger(f"{LOGGER_NAME}.{name}" if name else LOGGER_NAME)
