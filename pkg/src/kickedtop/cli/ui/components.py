"""
Rich UI components for the kickedtop CLI.

Renders run results as tables and panels on stdout; logging goes to stderr.
"""

from collections.abc import Sequence
from pathlib import Path
from typing import Any, Optional

from rich.console import Console
from rich.panel import Panel
from rich.progress import BarColumn, MofNCompleteColumn, Progress, SpinnerColumn, TextColumn, TimeElapsedColumn
from rich.table import Table
from rich.text import Text

from kickedtop.recurrence.period import RecurrenceReport
from kickedtop.recurrence.search import SearchResult
from kickedtop.recurrence.table import TableRow
from kickedtop.utils.helpers import format_optional, format_phase
from kickedtop.verify.identities import IdentityCheck

console = Console()


def _status(ok: bool) -> Text:
    return Text("pass", style="bold green") if ok else Text("FAIL", style="bold red")


class ReportPanel:
    """Summary of one period detection."""

    def __init__(self, title: str, report: RecurrenceReport) -> None:
        """Initialize the panel.

        Args:
            title: Panel title, usually the spin and twist.
            report: Detection result.
        """
        self.title = title
        self.report = report

    def render(self) -> None:
        """Render the panel."""
        body = Text()
        body.append("period: ", style="dim")
        body.append(format_optional(self.report.period), style="bold cyan")
        body.append("\nphase:  ", style="dim")
        body.append(format_phase(self.report.phase))
        body.append(f"\nhorizon {self.report.n_max}, tolerance {self.report.tolerance:.0e}", style="dim")
        console.print(Panel(body, title=self.title, expand=False))


def render_table_rows(rows: Sequence[TableRow]) -> None:
    """Render the kappa-class recurrence table."""
    table = Table(title="Recurrence periods (p = pi/2)")
    table.add_column("j", justify="right")
    table.add_column("kappa")
    table.add_column("period", justify="right")
    table.add_column("expected", justify="right")
    table.add_column("phase", justify="right")
    table.add_column("")
    for row in rows:
        expected = " or ".join(format_optional(p) for p in row.expected)
        table.add_row(
            f"{row.j:g}",
            row.kappa_class,
            format_optional(row.period),
            expected,
            format_phase(row.phase),
            _status(row.match),
        )
    console.print(table)


def render_search(results: Sequence[SearchResult], only_candidates: bool = True) -> None:
    """Render search cells, by default only those that dipped below the floor."""
    shown = [res for res in results if res.candidate] if only_candidates else list(results)
    table = Table(title=f"Rational twist search ({len(shown)} of {len(results)} cells)")
    table.add_column("r/s")
    table.add_column("j", justify="right")
    table.add_column("min entropy", justify="right")
    table.add_column("period", justify="right")
    table.add_column("class")
    for res in shown:
        table.add_row(
            f"{res.r}/{res.s}",
            f"{res.j:g}",
            f"{res.min_entropy:.3e}",
            format_optional(res.period),
            res.table_class or "-",
        )
    console.print(table)


def render_checks(checks: Sequence[IdentityCheck]) -> None:
    """Render identity checks with their worst deviations."""
    table = Table(title="Identity checks")
    table.add_column("check")
    table.add_column("spins", justify="right")
    table.add_column("max deviation", justify="right")
    table.add_column("")
    for check in checks:
        table.add_row(check.name, str(len(check.j_values)), f"{check.max_deviation:.2e}", _status(check.passed))
    console.print(table)


def render_outputs(out_dir: Path, names: Sequence[str]) -> None:
    """List the files a run wrote."""
    console.print(f"[dim]Wrote {len(names)} file(s) to {out_dir}[/dim]")
    for name in names:
        console.print(f"  [green]-[/green] {name}")


class ProgressIndicator:
    """Progress bar for sweeps over independent cells."""

    def __init__(self, description: str, total: Optional[int] = None) -> None:
        """Initialize the progress indicator.

        Args:
            description: Text shown next to the bar.
            total: Number of steps; None shows a spinner only.
        """
        self.description = description
        self.total = total
        self.progress: Optional[Progress] = None

    def __enter__(self) -> "ProgressIndicator":
        """Context manager entry."""
        self.progress = Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            MofNCompleteColumn(),
            TimeElapsedColumn(),
            console=console,
            transient=True,
        )
        self.progress.start()
        self.task_id = self.progress.add_task(self.description, total=self.total)
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        """Context manager exit."""
        if self.progress:
            self.progress.stop()

    def advance(self, description: Optional[str] = None) -> None:
        """Count one finished step; safe to call from worker threads.

        Args:
            description: New description text.
        """
        if self.progress is None:
            return
        self.progress.advance(self.task_id)
        if description:
            self.progress.update(self.task_id, description=description)

    @property
    def completed(self) -> int:
        """Steps counted so far."""
        if self.progress is None:
            return 0
        return int(self.progress.tasks[0].completed)
