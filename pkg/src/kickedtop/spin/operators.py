"""
Angular momentum matrices, y-rotations and z-twists in the spin-j representation.

J_y's eigendecomposition is cached per spin; every y-rotation is then a
diagonal phase sandwiched between the cached eigenvectors.
"""

import threading
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from kickedtop.core.exceptions import ConfigurationError
from kickedtop.core.logger import get_logger
from kickedtop.spin.types import ComplexArray, DenseOperator, RealArray, SpinParams

logger = get_logger("spin")


@dataclass(frozen=True)
class AngularMomentum:
    """The Hermitian generators J_x, J_y, J_z."""

    jx: DenseOperator
    jy: DenseOperator
    jz: DenseOperator

    def as_tuple(self) -> tuple[DenseOperator, DenseOperator, DenseOperator]:
        return (self.jx, self.jy, self.jz)


def raising_operator(spin: SpinParams) -> ComplexArray:
    """J+ with <m+1|J+|m> = sqrt(j(j+1) - m(m+1)) on the superdiagonal."""
    j = spin.j
    m = spin.m_values[1:]
    return np.diag(np.sqrt(j * (j + 1) - m * (m + 1)).astype(np.complex128), k=1)


def build_angular_momentum(spin: SpinParams) -> AngularMomentum:
    """Build J_x, J_y, J_z from the ladder operators.

    Args:
        spin: Spin parameters.

    Returns:
        The three Hermitian generators.
    """
    j_plus = raising_operator(spin)
    j_minus = j_plus.conj().T
    jx = 0.5 * (j_plus + j_minus)
    jy = -0.5j * (j_plus - j_minus)
    jz = np.diag(spin.m_values).astype(np.complex128)
    return AngularMomentum(
        jx=DenseOperator(jx, kind="hermitian"),
        jy=DenseOperator(jy, kind="hermitian"),
        jz=DenseOperator(jz, kind="hermitian"),
    )


class _EigenCache:
    """Per-spin cache of J_y = V diag(w) V^dagger.

    Lookups are lock-free; insertion happens under a lock, and entries are
    never replaced once stored.
    """

    def __init__(self) -> None:
        self._entries: dict[int, tuple[RealArray, ComplexArray]] = {}
        self._lock = threading.Lock()

    def get(self, spin: SpinParams) -> tuple[RealArray, ComplexArray]:
        entry = self._entries.get(spin.twice_j)
        if entry is not None:
            return entry
        with self._lock:
            entry = self._entries.get(spin.twice_j)
            if entry is None:
                entry = self._decompose(spin)
                self._entries[spin.twice_j] = entry
        return entry

    @staticmethod
    def _decompose(spin: SpinParams) -> tuple[RealArray, ComplexArray]:
        logger.debug(f"Diagonalizing J_y for j={spin}")
        jy = build_angular_momentum(spin).jy.matrix
        eigenvalues, eigenvectors = linalg.eigh(jy)
        # The spectrum of J_y is exactly {-j, ..., j}.
        eigenvalues = np.round(2.0 * eigenvalues) / 2.0
        eigenvalues.setflags(write=False)
        eigenvectors.setflags(write=False)
        return eigenvalues, eigenvectors

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()


_jy_eigen_cache = _EigenCache()


def jy_eigensystem(spin: SpinParams) -> tuple[RealArray, ComplexArray]:
    """Cached eigenvalues and eigenvectors of J_y."""
    return _jy_eigen_cache.get(spin)


def rotation_y(spin: SpinParams, angle: float) -> DenseOperator:
    """exp(-i angle J_y).

    Args:
        spin: Spin parameters.
        angle: Rotation angle in radians.

    Returns:
        Unitary rotation operator.
    """
    if not np.isfinite(angle):
        raise ConfigurationError(f"rotation angle must be finite, got {angle}", key="angle")
    eigenvalues, eigenvectors = jy_eigensystem(spin)
    phases = np.exp(-1j * angle * eigenvalues)
    return DenseOperator((eigenvectors * phases) @ eigenvectors.conj().T, kind="unitary")


def rotation_z(spin: SpinParams, angle: float) -> DenseOperator:
    """exp(-i angle J_z), diagonal in the descending-m basis."""
    return DenseOperator(np.diag(np.exp(-1j * angle * spin.m_values)), kind="unitary")


def twist_phases(spin: SpinParams, kappa: float) -> ComplexArray:
    """Diagonal of exp(-i kappa J_z^2 / 2j), ordered m = j..-j."""
    spin.require_positive()
    m = spin.m_values
    return np.exp(-1j * kappa * m * m / spin.twice_j)


def twist(spin: SpinParams, kappa: float) -> DenseOperator:
    """exp(-i kappa J_z^2 / 2j).

    Raises:
        SpinValueError: If j = 0.
    """
    return DenseOperator(np.diag(twist_phases(spin, kappa)), kind="unitary")


def dicke_phase_table(spin: SpinParams, kappa: float) -> list[tuple[float, complex]]:
    """The twist diagonal tagged by m, for scalar identity comparisons.

    Dicke level k (Hamming weight k in the qubit picture) is the entry with
    m = j - k.
    """
    return [(float(m), complex(phase)) for m, phase in zip(spin.m_values, twist_phases(spin, kappa))]
