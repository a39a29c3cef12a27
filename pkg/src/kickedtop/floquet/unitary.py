"""
Kicked-top Floquet operators.

One kick is U = exp(-i kappa J_z^2 / 2j) exp(-i p J_y) with tau = 1.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from kickedtop.core.exceptions import ConfigurationError, DimensionMismatchError
from kickedtop.core.logger import get_logger
from kickedtop.spin.operators import rotation_y, twist
from kickedtop.spin.types import CONSTRUCTION_TOL, DenseOperator, SpinParams, StateVector

logger = get_logger("floquet")

HALF_PI = math.pi / 2


class KappaClass(str, Enum):
    """Twist strengths expressed as multiples of pi j.

    The value is the command-line spelling; `multiplier` gives kappa / (pi j).
    """

    ZERO = "0"
    HALF_PJ = "pj/2"
    PJ = "pj"
    THREE_HALF_PJ = "3pj/2"
    TWO_PJ = "2pj"
    FIVE_HALF_PJ = "5pj/2"
    THREE_PJ = "3pj"
    SEVEN_HALF_PJ = "7pj/2"
    FOUR_PJ = "4pj"

    @property
    def multiplier(self) -> float:
        return _MULTIPLIERS[self]

    def kappa(self, spin: SpinParams) -> float:
        """The twist strength for this class at the given spin."""
        return self.multiplier * math.pi * spin.j

    @classmethod
    def parse(cls, name: Union[str, "KappaClass"]) -> "KappaClass":
        """Parse a class name, accepting 'pi' for 'p' and ignoring case and spaces.

        Raises:
            ConfigurationError: If the name is not a known class.
        """
        if isinstance(name, KappaClass):
            return name
        text = str(name).strip().lower().replace(" ", "").replace("pi", "p").replace("*", "")
        try:
            return cls(text)
        except ValueError:
            choices = ", ".join(member.value for member in cls)
            raise ConfigurationError(f"unknown kappa class {name!r}; choose one of {choices}", key="kappa-class") from None


_MULTIPLIERS: dict[KappaClass, float] = {member: 0.5 * index for index, member in enumerate(KappaClass)}


def resolve_kappa(spin: SpinParams, kappa: Union[float, None] = None, kappa_class: Union[str, None] = None) -> float:
    """Resolve an explicit kappa or a kappa class to a number."""
    if kappa_class is not None:
        return KappaClass.parse(kappa_class).kappa(spin)
    if kappa is None or not math.isfinite(kappa):
        raise ConfigurationError(f"kappa must be a finite number, got {kappa}", key="kappa")
    return float(kappa)


@dataclass(frozen=True)
class FloquetSpec:
    """Parameters of one kicked-top period."""

    spin: SpinParams
    kappa: float
    p: float = HALF_PI
    tau: float = 1.0

    def __post_init__(self) -> None:
        if self.tau != 1.0:
            raise ConfigurationError(f"only tau = 1 is supported, got {self.tau}", key="tau")
        if not math.isfinite(self.kappa):
            raise ConfigurationError(f"kappa must be finite, got {self.kappa}", key="kappa")
        if not math.isfinite(self.p):
            raise ConfigurationError(f"p must be finite, got {self.p}", key="p")

    @classmethod
    def for_class(cls, spin: SpinParams, kappa_class: Union[str, KappaClass], p: float = HALF_PI) -> "FloquetSpec":
        return cls(spin=spin, kappa=KappaClass.parse(kappa_class).kappa(spin), p=p)


@dataclass(frozen=True)
class PerturbedSpec:
    """A recurrence Floquet operator with its twist shifted by delta."""

    base: FloquetSpec
    delta: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.delta):
            raise ConfigurationError(f"delta must be finite, got {self.delta}", key="delta")

    @property
    def kappa(self) -> float:
        return self.base.kappa + self.delta


def build_floquet(spec: FloquetSpec) -> DenseOperator:
    """Build U = twist(kappa) rotation_y(p).

    Args:
        spec: Floquet parameters.

    Returns:
        The one-period unitary.

    Raises:
        SpinValueError: If j = 0.
    """
    phases = _twist_diagonal(spec.spin, spec.kappa)
    rotation = rotation_y(spec.spin, spec.p)
    return DenseOperator(phases[:, None] * rotation.matrix, kind="unitary")


def build_perturbed(spec: PerturbedSpec) -> DenseOperator:
    """Build U = twist(kappa_tilde + delta) rotation_y(p)."""
    return build_floquet(FloquetSpec(spin=spec.base.spin, kappa=spec.kappa, p=spec.base.p))


def _twist_diagonal(spin: SpinParams, kappa: float) -> np.ndarray:
    return np.diag(twist(spin, kappa).matrix)


def apply_kicks(U: DenseOperator, state: StateVector, n: int) -> list[StateVector]:
    """Evolve a state through n kicks.

    Args:
        U: Floquet operator.
        state: Initial state.
        n: Number of kicks.

    Returns:
        [state, U state, ..., U^n state], each renormalized.

    Raises:
        DimensionMismatchError: If U and state have different dimensions.
    """
    if U.dim != state.dim:
        raise DimensionMismatchError(f"operator is {U.dim}x{U.dim}, state has length {state.dim}")
    if n < 0:
        raise ValueError(f"kick count must be non-negative, got {n}")

    trajectory = [state]
    current = state.amplitudes
    for kick in range(1, n + 1):
        current = U.matrix @ current
        norm = float(np.linalg.norm(current))
        if abs(norm - 1.0) > CONSTRUCTION_TOL:
            raise AssertionError(f"norm drifted to {norm!r} at kick {kick}")
        current = current / norm
        trajectory.append(StateVector(current))
    return trajectory


def evolve_amplitudes(U: DenseOperator, amplitudes: np.ndarray, n: int) -> np.ndarray:
    """Apply U^n to a batch of column states, renormalizing every column each kick."""
    current = np.asarray(amplitudes, dtype=np.complex128)
    for _ in range(n):
        current = U.matrix @ current
        current = current / np.linalg.norm(current, axis=0)
    return current


def matrix_power(U: DenseOperator, n: int) -> DenseOperator:
    """U^n by binary exponentiation, without re-unitarization."""
    if n < 0:
        raise ValueError(f"exponent must be non-negative, got {n}")

    result = np.eye(U.dim, dtype=np.complex128)
    base = U.matrix
    exponent = n
    while exponent:
        if exponent & 1:
            result = result @ base
        exponent >>= 1
        if exponent:
            base = base @ base
    return DenseOperator(result, kind=U.kind if n else "unitary")
