"""
Recurrence table across the nine kappa classes at p = pi/2.

Integer spins recur with periods 4, 48, 8, 48, 2, 48, 8, 48, 4 down the
classes 0, pj/2, ..., 4pj; half-integer spins with 4, none, 12, none, 4,
none, 12, none, 4. The small spins that deviate are listed in
`expected_periods`.
"""

from collections.abc import Iterable
from typing import Optional

from pydantic import BaseModel

from kickedtop.core.exceptions import VerificationError
from kickedtop.core.logger import get_logger
from kickedtop.core.parallel import WorkerPool, resolve_pool
from kickedtop.floquet.unitary import HALF_PI, FloquetSpec, KappaClass, build_floquet
from kickedtop.recurrence.period import detect_period
from kickedtop.spin.types import IDENTITY_TOL, SpinParams

logger = get_logger("recurrence.table")

INTEGER_PERIODS: dict[KappaClass, Optional[int]] = {
    KappaClass.ZERO: 4,
    KappaClass.HALF_PJ: 48,
    KappaClass.PJ: 8,
    KappaClass.THREE_HALF_PJ: 48,
    KappaClass.TWO_PJ: 2,
    KappaClass.FIVE_HALF_PJ: 48,
    KappaClass.THREE_PJ: 8,
    KappaClass.SEVEN_HALF_PJ: 48,
    KappaClass.FOUR_PJ: 4,
}

HALF_INTEGER_PERIODS: dict[KappaClass, Optional[int]] = {
    KappaClass.ZERO: 4,
    KappaClass.HALF_PJ: None,
    KappaClass.PJ: 12,
    KappaClass.THREE_HALF_PJ: None,
    KappaClass.TWO_PJ: 4,
    KappaClass.FIVE_HALF_PJ: None,
    KappaClass.THREE_PJ: 12,
    KappaClass.SEVEN_HALF_PJ: None,
    KappaClass.FOUR_PJ: 4,
}

ODD_HALF_CLASSES = (
    KappaClass.HALF_PJ,
    KappaClass.THREE_HALF_PJ,
    KappaClass.FIVE_HALF_PJ,
    KappaClass.SEVEN_HALF_PJ,
)


def expected_periods(spin: SpinParams, kappa_class: KappaClass) -> frozenset[Optional[int]]:
    """Accepted periods for a (spin, class) cell at p = pi/2.

    A set, so callers compare against one shape; every cell currently has a
    single accepted value.
    """
    spin.require_positive()
    if spin.twice_j == 1:
        # The twist is a global phase at j = 1/2, leaving U ~ R_y(pi/2).
        return frozenset({4})
    if spin.is_integer:
        if kappa_class in ODD_HALF_CLASSES:
            if spin.twice_j in (2, 6):
                # j = 1 and j = 3 close after 16 kicks in every odd-half class.
                return frozenset({16})
        return frozenset({INTEGER_PERIODS[kappa_class]})
    return frozenset({HALF_INTEGER_PERIODS[kappa_class]})


def is_recurrence_class(spin: SpinParams, kappa_class: KappaClass) -> bool:
    """Whether the class has a state-independent period for this spin."""
    return None not in expected_periods(spin, kappa_class)


class TableRow(BaseModel):
    """One (spin, class) cell of the recurrence table."""

    j: float
    parity: str
    kappa_class: str
    kappa: float
    period: Optional[int]
    expected: list[Optional[int]]
    phase: Optional[float]
    match: bool


def spin_range(j_min: float, j_max: float) -> list[SpinParams]:
    """Every spin j_min, j_min + 1/2, ..., j_max."""
    low = SpinParams.from_j(j_min)
    high = SpinParams.from_j(j_max)
    return [SpinParams(twice) for twice in range(max(low.twice_j, 1), high.twice_j + 1)]


def _table_cell(cell: tuple[SpinParams, KappaClass, int, float]) -> TableRow:
    spin, kappa_class, n_max, tol = cell
    spec = FloquetSpec.for_class(spin, kappa_class, p=HALF_PI)
    report = detect_period(build_floquet(spec), n_max=n_max, tol=tol, full_series=False)
    expected = expected_periods(spin, kappa_class)
    return TableRow(
        j=spin.j,
        parity=spin.parity.value,
        kappa_class=kappa_class.value,
        kappa=spec.kappa,
        period=report.period,
        expected=sorted(expected, key=lambda p: (p is None, p or 0)),
        phase=report.phase,
        match=report.period in expected,
    )


def reproduce_table(
    spins: Iterable[SpinParams],
    n_max: int = 500,
    tol: float = IDENTITY_TOL,
    pool: Optional[WorkerPool] = None,
    strict: bool = True,
) -> list[TableRow]:
    """Detect the period of every kappa class for every spin.

    Args:
        spins: Spins to tabulate.
        n_max: Kick horizon per cell.
        tol: Identity-error tolerance.
        pool: Worker pool; cells are independent.
        strict: Raise on any mismatch with the expected table.

    Returns:
        Rows ordered by spin, then by class.

    Raises:
        VerificationError: If strict and a detected period disagrees.
    """
    spin_list = list(spins)
    if not spin_list:
        raise ValueError("at least one spin is required")

    cells = [(spin, kappa_class, n_max, tol) for spin in spin_list for kappa_class in KappaClass]
    logger.info(f"Tabulating {len(cells)} cells for {len(spin_list)} spins")
    rows = resolve_pool(pool).map_ordered(_table_cell, cells)

    mismatches = [row for row in rows if not row.match]
    for row in mismatches:
        logger.error(f"j={row.j} kappa={row.kappa_class}: period {row.period}, expected {row.expected}")
    if strict and mismatches:
        raise VerificationError(
            f"{len(mismatches)} table cell(s) disagree with the expected periods",
            failures=[row.model_dump() for row in mismatches],
        )
    return rows
