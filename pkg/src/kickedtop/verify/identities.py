"""
Numerical certificates for the kicked top's operator identities.

Qubit-picture operators never leave the symmetric subspace: Z^{(x)n}
restricted to it is the Dicke-level phase (-1)^k, and (iY)^{(x)n} is
(-1)^n R_y(pi). Every check compares both sides in the (2j + 1)-dimensional
representation and records the largest entrywise deviation.
"""

import cmath
import math
from collections.abc import Callable, Iterable, Sequence
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field

from kickedtop.core.exceptions import SpinValueError, VerificationError
from kickedtop.core.logger import get_logger
from kickedtop.core.parallel import WorkerPool, resolve_pool
from kickedtop.floquet.unitary import FloquetSpec, KappaClass, build_floquet, matrix_power
from kickedtop.recurrence.period import detect_period
from kickedtop.recurrence.table import expected_periods
from kickedtop.spin.operators import dicke_phase_table, rotation_y, rotation_z, twist, twist_phases
from kickedtop.spin.types import IDENTITY_TOL, DenseOperator, SpinParams

logger = get_logger("verify")

SQRT2 = math.sqrt(2.0)
# Largest possible trace deficit; reported when a period claim fails outright.
MISMATCH_DEVIATION = 1.0


class IdentityCheck(BaseModel):
    """Result of one named identity over a set of spins."""

    name: str
    j_values: list[float]
    deviations: dict[str, float] = Field(default_factory=dict, description="Max deviation per spin")
    phases: dict[str, float] = Field(default_factory=dict, description="Recovered global phase per spin")
    excluded_j: list[float] = Field(
        default_factory=list, description="Half-integer spins left out of an integer-only check"
    )
    tolerance: float = IDENTITY_TOL

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tolerance

    def report_rows(self) -> list[dict[str, object]]:
        """One {name, j, max_deviation, tolerance, pass} record per spin."""
        return [
            {
                "name": self.name,
                "j": float(j),
                "max_deviation": deviation,
                "tolerance": self.tolerance,
                "pass": deviation < self.tolerance,
            }
            for j, deviation in self.deviations.items()
        ]


def _spins(j_values: Iterable[float]) -> list[SpinParams]:
    spins = [value if isinstance(value, SpinParams) else SpinParams.from_j(value) for value in j_values]
    if not spins:
        raise ValueError("at least one spin is required")
    for spin in spins:
        spin.require_positive()
    return spins


def _require_integer(spins: Sequence[SpinParams], check: str) -> None:
    odd = [str(spin) for spin in spins if not spin.is_integer]
    if odd:
        raise SpinValueError(f"{check} applies to integer spins only, got j={', '.join(odd)}")


def _max_abs(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)))


def _record(name: str, spins: Sequence[SpinParams], tol: float, fn: Callable[[SpinParams], float]) -> IdentityCheck:
    check = IdentityCheck(name=name, j_values=[spin.j for spin in spins], tolerance=tol)
    for spin in spins:
        check.deviations[str(spin.j)] = fn(spin)
    logger.debug(f"{name}: max deviation {check.max_deviation:.3e}")
    return check


def _floquet(spin: SpinParams, kappa_class: KappaClass) -> DenseOperator:
    return build_floquet(FloquetSpec.for_class(spin, kappa_class))


def check_pi_twist_cases(j_values: Iterable[float], tol: float = IDENTITY_TOL) -> IdentityCheck:
    """exp(-i pi J_z^2) against its qubit-picture form.

    Even integer j gives Z^{(x)n}, odd integer j gives -Z^{(x)n}, both as the
    Dicke-level phases (-1)^k; half-integer j gives e^{-i pi/4} I.
    """
    spins = _spins(j_values)

    def deviation(spin: SpinParams) -> float:
        phases = np.array([phase for _, phase in dicke_phase_table(spin, 2.0 * math.pi * spin.j)])
        k = np.arange(spin.dim)
        if spin.is_integer:
            sign = 1.0 if (spin.twice_j // 2) % 2 == 0 else -1.0
            expected = sign * (-1.0) ** k
        else:
            expected = np.full(spin.dim, cmath.exp(-1j * math.pi / 4))
        return _max_abs(phases, expected)

    return _record("pi_twist_cases", spins, tol, deviation)


def check_twist_jpi(j_values: Iterable[float], tol: float = IDENTITY_TOL) -> IdentityCheck:
    """exp(-i (pi/2) J_z^2) per Dicke level against its closed forms.

    Integer j: e^{-i pi/4} (1 + i^{n+1+2k}) / sqrt 2.
    Half-integer j: e^{-i pi/8} sqrt 2 cos((n - 2k) pi / 4).
    """
    spins = _spins(j_values)

    def deviation(spin: SpinParams) -> float:
        phases = twist_phases(spin, math.pi * spin.j)
        n = spin.twice_j
        k = np.arange(spin.dim)
        if spin.is_integer:
            expected = cmath.exp(-1j * math.pi / 4) * (1.0 + 1j ** ((n + 1 + 2 * k) % 4)) / SQRT2
        else:
            expected = cmath.exp(-1j * math.pi / 8) * SQRT2 * np.cos((n - 2 * k) * math.pi / 4)
        return _max_abs(phases, expected)

    return _record("twist_jpi", spins, tol, deviation)


def check_U4_U6(j_values: Iterable[float], tol: float = IDENTITY_TOL) -> IdentityCheck:
    """U_{pi j}^4 = R_y(pi) for integer j; U_{pi j}^6 = e^{i pi/4} R_y(pi) for half-integer j.

    The half-integer form is e^{-3 i pi/4} (iY)^{(x)n}. Squaring both gives
    U^8 = I and U^12 = e^{-i pi/2} I, which are checked as well.
    """
    spins = _spins(j_values)

    def deviation(spin: SpinParams) -> float:
        U = _floquet(spin, KappaClass.PJ)
        flip = rotation_y(spin, math.pi).matrix
        identity = np.eye(spin.dim)
        if spin.is_integer:
            quarter = matrix_power(U, 4).matrix
            full = matrix_power(U, 8).matrix
            return max(_max_abs(quarter, flip), _max_abs(full, identity))
        sixth = matrix_power(U, 6).matrix
        full = matrix_power(U, 12).matrix
        return max(
            _max_abs(sixth, cmath.exp(1j * math.pi / 4) * flip),
            _max_abs(full, cmath.exp(-1j * math.pi / 2) * identity),
        )

    return _record("U4_U6", spins, tol, deviation)


def check_gaussian_sum_pij2(j_values: Iterable[float], tol: float = IDENTITY_TOL) -> IdentityCheck:
    """exp(-i (pi/4) J_z^2) as a superposition of z-rotations, integer j only.

    twist(pi j / 2) = (e^{-i pi/4} I + R_z(pi/2) + e^{3 i pi/4} R_z(pi) + R_z(3 pi/2)) / 2.

    Raises:
        SpinValueError: If any spin is half-integer.
    """
    spins = _spins(j_values)
    _require_integer(spins, "gaussian_sum_pij2")

    def deviation(spin: SpinParams) -> float:
        lhs = twist(spin, math.pi * spin.j / 2).matrix
        rhs = 0.5 * (
            cmath.exp(-1j * math.pi / 4) * np.eye(spin.dim)
            + rotation_z(spin, math.pi / 2).matrix
            + cmath.exp(3j * math.pi / 4) * rotation_z(spin, math.pi).matrix
            + rotation_z(spin, 3 * math.pi / 2).matrix
        )
        return _max_abs(lhs, rhs)

    return _record("gaussian_sum_pij2", spins, tol, deviation)


def check_3pij_and_5pij2(
    j_values: Iterable[float],
    tol: float = IDENTITY_TOL,
    n_max: int = 500,
) -> IdentityCheck:
    """Period claims for the 3pj, 5pj/2 and 7pj/2 classes.

    The deviation is the identity error at the detected period, or 1 when the
    detected period disagrees with the expected one.
    """
    spins = _spins(j_values)
    classes = (KappaClass.THREE_PJ, KappaClass.FIVE_HALF_PJ, KappaClass.SEVEN_HALF_PJ)

    def deviation(spin: SpinParams) -> float:
        worst = 0.0
        for kappa_class in classes:
            expected = expected_periods(spin, kappa_class)
            report = detect_period(_floquet(spin, kappa_class), n_max=n_max, tol=tol, full_series=False)
            if report.period not in expected:
                logger.warning(f"j={spin} {kappa_class.value}: period {report.period}, expected {sorted(expected, key=str)}")
                return MISMATCH_DEVIATION
            if report.period is not None:
                worst = max(worst, report.error_at(report.period))
        return worst

    return _record("3pij_and_5pij2", spins, tol, deviation)


def check_half_period_rotation(j_values: Iterable[float], tol: float = IDENTITY_TOL) -> IdentityCheck:
    """U_{pi j/2} raised to half its period is a pi-rotation about y up to a phase.

    The half period is 24, or 8 at j = 1 and j = 3 where the period is 16.

    Raises:
        SpinValueError: If any spin is half-integer.
    """
    spins = _spins(j_values)
    _require_integer(spins, "half_period_rotation")
    check = IdentityCheck(name="half_period_rotation", j_values=[spin.j for spin in spins], tolerance=tol)

    for spin in spins:
        period = min(p for p in expected_periods(spin, KappaClass.HALF_PJ) if p is not None)
        half = matrix_power(_floquet(spin, KappaClass.HALF_PJ), period // 2).matrix
        flip = rotation_y(spin, math.pi).matrix
        # Tr(R^dagger U^{N/2}) / D is the phase when the two are proportional.
        overlap = np.trace(flip.conj().T @ half) / spin.dim
        phase = cmath.phase(overlap)
        check.deviations[str(spin.j)] = _max_abs(half, cmath.exp(1j * phase) * flip)
        check.phases[str(spin.j)] = phase
    return check


def check_kappa_shift_symmetry(
    j_values: Iterable[float],
    tol: float = IDENTITY_TOL,
    kappas: Sequence[float] = (0.7, 2.5, 4.1),
) -> IdentityCheck:
    """Twist shifts by 4 pi j and 2 pi j.

    U_{kappa + 4 pi j} = U_kappa for integer j and e^{-i pi/2} U_kappa for
    half-integer j; U_{kappa + 2 pi j} = exp(-i pi J_z^2) U_kappa.
    """
    spins = _spins(j_values)

    def deviation(spin: SpinParams) -> float:
        phase = 1.0 if spin.is_integer else cmath.exp(-1j * math.pi / 2)
        local = twist(spin, 2.0 * math.pi * spin.j).matrix
        worst = 0.0
        for kappa in kappas:
            U = build_floquet(FloquetSpec(spin=spin, kappa=kappa)).matrix
            full_shift = build_floquet(FloquetSpec(spin=spin, kappa=kappa + 4.0 * math.pi * spin.j)).matrix
            half_shift = build_floquet(FloquetSpec(spin=spin, kappa=kappa + 2.0 * math.pi * spin.j)).matrix
            worst = max(worst, _max_abs(full_shift, phase * U), _max_abs(half_shift, local @ U))
        return worst

    return _record("kappa_shift_symmetry", spins, tol, deviation)


CheckFn = Callable[..., IdentityCheck]

CHECKS: dict[str, CheckFn] = {
    "pi_twist_cases": check_pi_twist_cases,
    "twist_jpi": check_twist_jpi,
    "U4_U6": check_U4_U6,
    "gaussian_sum_pij2": check_gaussian_sum_pij2,
    "3pij_and_5pij2": check_3pij_and_5pij2,
    "half_period_rotation": check_half_period_rotation,
    "kappa_shift_symmetry": check_kappa_shift_symmetry,
}

INTEGER_ONLY = frozenset({"gaussian_sum_pij2", "half_period_rotation"})


def run_checks(
    names: Optional[Sequence[str]],
    j_values: Iterable[float],
    tol: float = IDENTITY_TOL,
    pool: Optional[WorkerPool] = None,
    strict: bool = False,
) -> list[IdentityCheck]:
    """Run named checks (all when names is None) across the spins.

    When every check runs, integer-only checks receive the integer spins of
    the sweep and list the rest in `excluded_j`. A named integer-only check
    never drops spins.

    Raises:
        KeyError: If a check name is unknown.
        SpinValueError: If a named integer-only check meets half-integer spins.
        VerificationError: If strict and any check fails.
    """
    selected = list(CHECKS) if names is None else list(names)
    unknown = [name for name in selected if name not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check(s): {', '.join(unknown)}")

    spins = _spins(j_values)
    half_integer = [spin for spin in spins if not spin.is_integer]
    tasks: list[tuple[str, list[SpinParams], list[SpinParams]]] = []
    for name in selected:
        if name not in INTEGER_ONLY:
            tasks.append((name, spins, []))
        elif names is not None:
            _require_integer(spins, name)
            tasks.append((name, spins, []))
        else:
            if half_integer:
                logger.info(f"{name}: leaving out {len(half_integer)} half-integer spin(s)")
            tasks.append((name, [spin for spin in spins if spin.is_integer], half_integer))

    def run(task: tuple[str, list[SpinParams], list[SpinParams]]) -> IdentityCheck:
        name, subset, excluded = task
        check = CHECKS[name](subset, tol=tol) if subset else IdentityCheck(name=name, j_values=[], tolerance=tol)
        if excluded:
            check = check.model_copy(update={"excluded_j": [spin.j for spin in excluded]})
        return check

    results = resolve_pool(pool).map_ordered(run, tasks)
    failed = [check for check in results if not check.passed]
    for check in failed:
        logger.error(f"{check.name} failed: max deviation {check.max_deviation:.3e} >= {check.tolerance:.1e}")
    if strict and failed:
        raise VerificationError(
            f"{len(failed)} identity check(s) failed",
            failures=[row for check in failed for row in check.report_rows() if not row["pass"]],
        )
    return results
