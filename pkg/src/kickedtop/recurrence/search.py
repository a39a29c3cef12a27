"""
Search for recurrences at rational twists kappa = pi j r / s.

Each (r, s, j) cell evolves one initial coherent state and records the
minimum single-qubit entropy. Only cells whose entropy dips below the floor
are candidates, and only candidates pay for a full detect_period run.
"""

import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from kickedtop.core.logger import get_logger
from kickedtop.core.parallel import WorkerPool, resolve_pool
from kickedtop.floquet.unitary import HALF_PI, FloquetSpec, KappaClass, build_floquet
from kickedtop.observables.entropy import entropy_series, min_entropy_scan
from kickedtop.recurrence.period import detect_period
from kickedtop.spin.types import IDENTITY_TOL, CoherentParams, RealArray, SpinParams, StateVector

logger = get_logger("recurrence.search")


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of a rational-twist search."""

    r_max: int = 10
    s_max: int = 10
    j_values: tuple[SpinParams, ...] = field(default_factory=tuple)
    n_kicks: int = 500
    entropy_floor: float = 1e-7
    initial_state: CoherentParams = CoherentParams(2.25, 2.0)
    tol: float = IDENTITY_TOL
    p: float = HALF_PI

    def __post_init__(self) -> None:
        if self.r_max < 1 or self.s_max < 1:
            raise ValueError("r_max and s_max must be >= 1")
        if self.n_kicks < 1:
            raise ValueError("n_kicks must be >= 1")

    def pairs(self) -> Iterator[tuple[int, int]]:
        """Coprime (r, s) with 1 <= r <= r_max and 1 <= s <= s_max."""
        for r in range(1, self.r_max + 1):
            for s in range(1, self.s_max + 1):
                if math.gcd(r, s) == 1:
                    yield r, s

    @property
    def cell_count(self) -> int:
        """Number of (r, s, j) cells screened."""
        return sum(1 for _ in self.pairs()) * len(self.j_values)


def table_class(r: int, s: int) -> Optional[KappaClass]:
    """The kappa class r/s falls in after the 4 pi j shift, if any."""
    if (2 * r) % s:
        return None
    halves = (2 * r // s) % 8
    return list(KappaClass)[halves]


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one (r, s, j) cell."""

    r: int
    s: int
    j: float
    kappa: float
    min_entropy: float
    min_kick: int
    candidate: bool
    period: Optional[int]
    table_class: Optional[str]


def _search_cell(cell: tuple[SearchConfig, int, int, SpinParams]) -> SearchResult:
    cfg, r, s, spin = cell
    kappa = math.pi * spin.j * r / s
    min_entropy, min_kick = min_entropy_scan(spin, kappa, cfg.initial_state, cfg.n_kicks, cfg.p)
    candidate = min_entropy < cfg.entropy_floor
    period = None
    if candidate:
        U = build_floquet(FloquetSpec(spin=spin, kappa=kappa, p=cfg.p))
        period = detect_period(U, n_max=cfg.n_kicks, tol=cfg.tol, full_series=False).period
        logger.debug(f"Candidate r/s={r}/{s} j={spin}: entropy {min_entropy:.3e}, period {period}")
    kclass = table_class(r, s)
    return SearchResult(
        r=r,
        s=s,
        j=spin.j,
        kappa=kappa,
        min_entropy=min_entropy,
        min_kick=min_kick,
        candidate=candidate,
        period=period,
        table_class=kclass.value if kclass else None,
    )


def search_rational_kappa(
    cfg: SearchConfig,
    pool: Optional[WorkerPool] = None,
    on_result: Optional[Callable[[SearchResult], None]] = None,
) -> list[SearchResult]:
    """Screen every coprime (r, s) and spin for recurrences.

    Args:
        cfg: Search parameters.
        pool: Worker pool; cells are independent.
        on_result: Called with each finished cell, from the worker thread
            that ran it and in completion order.

    Returns:
        Results sorted by (r, s, j).
    """
    if not cfg.j_values:
        raise ValueError("at least one spin is required")

    cells = [(cfg, r, s, spin) for r, s in cfg.pairs() for spin in cfg.j_values]
    logger.info(f"Searching {len(cells)} cells over {cfg.n_kicks} kicks")

    def run(cell: tuple[SearchConfig, int, int, SpinParams]) -> SearchResult:
        result = _search_cell(cell)
        if on_result is not None:
            on_result(result)
        return result

    results = resolve_pool(pool).map_ordered(run, cells)
    found = [res for res in results if res.period is not None]
    logger.info(f"{len(found)} recurrence(s) confirmed")
    return sorted(results, key=lambda res: (res.r, res.s, res.j))


def entropy_sequence_kappa_shift(
    spin: SpinParams,
    kappa: float,
    state: StateVector,
    n_kicks: int,
    p: float = HALF_PI,
) -> tuple[RealArray, RealArray]:
    """Entropy series at kappa and at kappa + 2 pi j from the same state.

    The two twists differ by exp(-i pi J_z^2), a symmetric local unitary in
    the qubit picture, so the series agree.
    """
    shifted = kappa + 2.0 * math.pi * spin.j
    return (
        entropy_series(spin, kappa, state, n_kicks, "vn", p),
        entropy_series(spin, shifted, state, n_kicks, "vn", p),
    )


def max_series_gap(series: tuple[RealArray, RealArray]) -> float:
    """Largest elementwise difference between two entropy series."""
    return float(np.max(np.abs(series[0] - series[1])))
