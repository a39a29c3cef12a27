"""Rich rendering for the kickedtop CLI."""

from kickedtop.cli.ui.components import (
    ProgressIndicator,
    ReportPanel,
    console,
    render_checks,
    render_outputs,
    render_search,
    render_table_rows,
)

__all__ = [
    "ProgressIndicator",
    "ReportPanel",
    "console",
    "render_checks",
    "render_outputs",
    "render_search",
    "render_table_rows",
]
