"""Command-line interface for kickedtop."""

from kickedtop.cli.main import cli, cli_main

__all__ = ["cli", "cli_main"]
