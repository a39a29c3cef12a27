"""Unit tests for UI components."""

from pathlib import Path

from kickedtop.cli.ui.components import (
    ProgressIndicator,
    ReportPanel,
    console,
    render_checks,
    render_outputs,
    render_search,
    render_table_rows,
)
from kickedtop.core.parallel import WorkerPool
from kickedtop.recurrence.period import RecurrenceReport
from kickedtop.recurrence.search import SearchResult
from kickedtop.recurrence.table import TableRow
from kickedtop.verify.identities import IdentityCheck


class TestUIComponents:
    """Test cases for UI components."""

    def test_report_panel(self) -> None:
        """Test period panel rendering."""
        report = RecurrenceReport(period=2, phase=0.0, tolerance=1e-10, n_max=2, error_series=[1.0, 0.0])
        with console.capture() as capture:
            ReportPanel("j=2, kappa=12.57", report).render()
        text = capture.get()
        assert "j=2, kappa=12.57" in text
        assert "period" in text

    def test_report_panel_without_period(self) -> None:
        """Test rendering when nothing recurred."""
        with console.capture() as capture:
            ReportPanel("j=15.5", RecurrenceReport(tolerance=1e-10, n_max=5)).render()
        assert "none" in capture.get()

    def test_table_rows(self) -> None:
        """Test recurrence table rendering."""
        rows = [
            TableRow(
                j=1.0,
                parity="integer",
                kappa_class="pj/2",
                kappa=1.5707963267948966,
                period=16,
                expected=[16],
                phase=0.0,
                match=True,
            ),
            TableRow(
                j=1.5,
                parity="half-integer",
                kappa_class="pj/2",
                kappa=2.356194490192345,
                period=None,
                expected=[None],
                phase=None,
                match=True,
            ),
        ]
        with console.capture() as capture:
            render_table_rows(rows)
        text = capture.get()
        assert "16" in text
        assert "pass" in text

    def test_search(self) -> None:
        """Test that only candidates are shown by default."""
        results = [
            SearchResult(1, 1, 1.5, 4.71, 0.0, 12, True, 12, "pj"),
            SearchResult(1, 2, 1.5, 2.36, 0.3, 7, False, None, "pj/2"),
        ]
        with console.capture() as capture:
            render_search(results)
        assert "1 of 2" in capture.get()

    def test_checks(self) -> None:
        """Test identity check rendering with a failure."""
        checks = [
            IdentityCheck(name="U4_U6", j_values=[1.0], deviations={"1.0": 1e-14}),
            IdentityCheck(name="twist_jpi", j_values=[1.0], deviations={"1.0": 0.5}),
        ]
        with console.capture() as capture:
            render_checks(checks)
        text = capture.get()
        assert "U4_U6" in text
        assert "FAIL" in text

    def test_outputs(self) -> None:
        """Test the output listing."""
        with console.capture() as capture:
            render_outputs(Path("out"), ["period.json", "period.csv"])
        text = capture.get()
        assert "2 file(s)" in text
        assert "period.csv" in text

    def test_progress_counts_steps_from_threads(self) -> None:
        """Test that advances from worker threads are all counted."""
        with ProgressIndicator("cells", total=20) as progress:
            with WorkerPool(4) as pool:
                pool.map_ordered(lambda _: progress.advance(), range(20))
            assert progress.completed == 20
        assert progress.progress is not None
        assert progress.progress.finished

    def test_progress_outside_context(self) -> None:
        """Test that advancing before entry is a no-op."""
        progress = ProgressIndicator("idle", total=3)
        progress.advance("ignored")
        assert progress.completed == 0
