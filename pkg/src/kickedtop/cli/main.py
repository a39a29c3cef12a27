"""
Main CLI entry point for kickedtop.

This module provides the command group, routes subcommands and maps
errors to exit codes: 2 invalid arguments, 3 I/O failure, 4 verification
failure, 1 anything else.
"""

import sys
from typing import Any

import click

from kickedtop import __version__
from kickedtop.cli.commands import ALL_COMMANDS
from kickedtop.core.exceptions import (
    ArtifactError,
    ConfigurationError,
    KickedTopError,
    SpinValueError,
    VerificationError,
)

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_VERIFICATION = 4
EXIT_INTERRUPTED = 130


def exit_code_for(error: KickedTopError) -> int:
    """Exit code for a library error."""
    if isinstance(error, (ConfigurationError, SpinValueError)):
        return EXIT_USAGE
    if isinstance(error, ArtifactError):
        return EXIT_IO
    if isinstance(error, VerificationError):
        return EXIT_VERIFICATION
    return EXIT_FAILURE


class KickedTopGroup(click.Group):
    """Command group that turns library errors into exit codes."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except KickedTopError as e:
            click.echo(f"Error: {e.message}", err=True)
            ctx.exit(exit_code_for(e))


@click.group(cls=KickedTopGroup)
@click.version_option(version=__version__, prog_name="kickedtop")
def cli_main() -> None:
    """
    kickedtop - recurrences of the quantum kicked top.

    Every subcommand writes CSV/JSON artifacts and a .meta.json sidecar
    into its output directory.
    """


for _command in ALL_COMMANDS:
    cli_main.add_command(_command)


@cli_main.command()
def version() -> None:
    """Show kickedtop version information."""
    click.echo(f"kickedtop v{__version__}")


def cli() -> None:
    """Entry point for the CLI."""
    try:
        code = cli_main.main(standalone_mode=False)
    except click.UsageError as e:
        e.show()
        sys.exit(EXIT_USAGE)
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    except (click.Abort, KeyboardInterrupt):
        click.echo("\nInterrupted by user", err=True)
        sys.exit(EXIT_INTERRUPTED)
    except KickedTopError as e:
        click.echo(f"Error: {e.message}", err=True)
        sys.exit(exit_code_for(e))
    except Exception as e:
        click.echo(f"Unexpected error: {e}", err=True)
        sys.exit(EXIT_FAILURE)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    cli()
