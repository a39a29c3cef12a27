"""
Phase-invariant recurrence detection.

A unitary recurs at N when U^N is a global phase times the identity. The
detector is the normalized trace deficit 1 - |Tr U^N| / D, which vanishes
exactly in that case.
"""

import cmath
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from kickedtop.core.exceptions import DimensionMismatchError
from kickedtop.core.logger import get_logger
from kickedtop.spin.types import IDENTITY_TOL, DenseOperator, StateVector

logger = get_logger("recurrence")


def identity_error(U: DenseOperator) -> float:
    """1 - |Tr U| / D; zero iff the unitary U is proportional to the identity."""
    return _trace_deficit(U.matrix)


def _trace_deficit(matrix: np.ndarray) -> float:
    # Clipped at zero: roundoff can push |Tr U| / D a few ulps above one.
    return max(0.0, 1.0 - abs(np.trace(matrix)) / matrix.shape[0])


class RecurrenceReport(BaseModel):
    """Outcome of a period search.

    error_series[k - 1] holds the identity error of U^k for k = 1..n_max.
    """

    period: Optional[int] = Field(default=None, ge=1)
    phase: Optional[float] = Field(default=None, description="arg Tr U^N in (-pi, pi]")
    tolerance: float
    n_max: int = Field(ge=1)
    error_series: list[float] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_minimality(self) -> "RecurrenceReport":
        """The period is the first step under tolerance."""
        if self.period is not None and self.error_series:
            if self.error_series[self.period - 1] >= self.tolerance:
                raise ValueError("error at the reported period is not below tolerance")
            if any(e < self.tolerance for e in self.error_series[: self.period - 1]):
                raise ValueError("an earlier step is already below tolerance")
        return self

    @property
    def found(self) -> bool:
        return self.period is not None

    def error_at(self, k: int) -> float:
        """Identity error of U^k (1-based)."""
        return self.error_series[k - 1]


def detect_period(
    U: DenseOperator,
    n_max: int = 200,
    tol: float = IDENTITY_TOL,
    full_series: bool = True,
) -> RecurrenceReport:
    """Find the smallest N <= n_max with identity_error(U^N) < tol.

    Powers are built incrementally, one multiplication per step.

    Args:
        U: Unitary to test.
        n_max: Horizon.
        tol: Identity-error threshold.
        full_series: Keep multiplying to n_max after the period is found, so
            the error series covers the whole horizon.

    Returns:
        Report with the period and recovered phase, or period None.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")

    errors: list[float] = []
    period: Optional[int] = None
    phase: Optional[float] = None
    power = U.matrix.copy()
    for k in range(1, n_max + 1):
        if k > 1:
            power = power @ U.matrix
        error = _trace_deficit(power)
        errors.append(error)
        if period is None and error < tol:
            period = k
            phase = cmath.phase(complex(np.trace(power)))
            logger.debug(f"Recurrence at N={k}, phase={phase:.6f}, error={error:.3e}")
            if not full_series:
                break

    return RecurrenceReport(period=period, phase=phase, tolerance=tol, n_max=n_max, error_series=errors)


def state_orbit_period(
    U: DenseOperator,
    state: StateVector,
    n_max: int = 200,
    tol: float = 1e-9,
) -> Optional[int]:
    """Smallest N with 1 - |<state|U^N|state>| < tol, or None.

    Unlike detect_period this is specific to one state and can be shorter
    than the operator period.
    """
    if U.dim != state.dim:
        raise DimensionMismatchError(f"operator is {U.dim}x{U.dim}, state has length {state.dim}")

    initial = state.amplitudes
    current = initial
    for k in range(1, n_max + 1):
        current = U.matrix @ current
        current = current / np.linalg.norm(current)
        if 1.0 - abs(np.vdot(initial, current)) < tol:
            return k
    return None
