"""Recurrence detection, the kappa-class table and rational-twist searches."""

from kickedtop.recurrence.period import RecurrenceReport, detect_period, identity_error, state_orbit_period
from kickedtop.recurrence.search import (
    SearchConfig,
    SearchResult,
    entropy_sequence_kappa_shift,
    search_rational_kappa,
)
from kickedtop.recurrence.table import (
    TableRow,
    expected_periods,
    is_recurrence_class,
    reproduce_table,
    spin_range,
)

__all__ = [
    "RecurrenceReport",
    "SearchConfig",
    "SearchResult",
    "TableRow",
    "detect_period",
    "entropy_sequence_kappa_shift",
    "expected_periods",
    "identity_error",
    "is_recurrence_class",
    "reproduce_table",
    "search_rational_kappa",
    "spin_range",
    "state_orbit_period",
]
