"""
CLI commands package for kickedtop.

This package contains the experiment subcommands and their run plumbing.
"""

from kickedtop.cli.commands.experiments import (
    classical_command,
    entropy_command,
    husimi_command,
    period_command,
    search_command,
    stability_command,
    table_command,
    verify_command,
)
from kickedtop.cli.commands.session import RunSession

ALL_COMMANDS = (
    period_command,
    table_command,
    search_command,
    husimi_command,
    entropy_command,
    classical_command,
    stability_command,
    verify_command,
)

__all__ = ["ALL_COMMANDS", "RunSession"]
