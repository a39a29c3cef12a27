"""
Husimi Q functions on a (theta, phi) grid.

Polar nodes are the Fejer first-rule points theta_i = (i + 1/2) pi / T, which
exclude the poles; azimuthal nodes are 2 pi k / P. The quadrature reproduces
the normalization (2j + 1) / (4 pi) int Q dOmega = 1 exactly (up to
roundoff) whenever T > 2j and P > 2j.
"""

import math
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import ndimage

from kickedtop.core.exceptions import DimensionMismatchError
from kickedtop.core.logger import get_logger
from kickedtop.spin.coherent import coherent_amplitudes
from kickedtop.spin.types import DenseOperator, RealArray, SpinParams, StateVector

logger = get_logger("observables.husimi")


def theta_nodes(count: int) -> RealArray:
    return (np.arange(count) + 0.5) * math.pi / count


def phi_nodes(count: int) -> RealArray:
    return 2.0 * math.pi * np.arange(count) / count


@lru_cache(maxsize=32)
def fejer_weights(count: int) -> RealArray:
    """Fejer first-rule weights for int f(cos theta) sin theta dtheta over [0, pi]."""
    theta = theta_nodes(count)
    k = np.arange(1, count // 2 + 1)
    series = np.cos(2.0 * np.outer(theta, k)) / (4.0 * k * k - 1.0)
    weights = (2.0 / count) * (1.0 - 2.0 * series.sum(axis=1))
    weights.setflags(write=False)
    return weights


@dataclass(frozen=True, eq=False)
class HusimiField:
    """Q(theta, phi) on a grid, rows theta and columns phi."""

    spin: SpinParams
    theta: RealArray = field(repr=False)
    phi: RealArray = field(repr=False)
    values: RealArray = field(repr=False)

    @property
    def theta_count(self) -> int:
        return int(self.theta.shape[0])

    @property
    def phi_count(self) -> int:
        return int(self.phi.shape[0])

    @property
    def q_max(self) -> float:
        return float(self.values.max())

    @property
    def quadrature(self) -> RealArray:
        """Per-cell weight (2j + 1) / (4 pi) w_theta dphi."""
        dphi = 2.0 * math.pi / self.phi_count
        row = (self.spin.dim / (4.0 * math.pi)) * fejer_weights(self.theta_count) * dphi
        return np.repeat(row[:, None], self.phi_count, axis=1)

    def normalization(self) -> float:
        """Weighted sum of Q; one for a normalized state."""
        return float(np.sum(self.values * self.quadrature))

    def argmax(self) -> tuple[float, float]:
        """Grid point (theta, phi) of the largest value."""
        row, col = np.unravel_index(int(np.argmax(self.values)), self.values.shape)
        return float(self.theta[row]), float(self.phi[col])

    def rows(self) -> Iterable[tuple[float, float, float]]:
        """(theta, phi, q) in row-major order."""
        for i, theta in enumerate(self.theta):
            for k, phi in enumerate(self.phi):
                yield float(theta), float(phi), float(self.values[i, k])


def husimi(state: StateVector, theta_count: int = 140, phi_count: int = 280) -> HusimiField:
    """Q(theta, phi) = |<theta, phi|psi>|^2 on the grid.

    Args:
        state: Pure spin-j state.
        theta_count: Polar grid size.
        phi_count: Azimuthal grid size.

    Returns:
        The Husimi field.
    """
    if theta_count < 2 or phi_count < 2:
        raise ValueError(f"grid sizes must be >= 2, got {theta_count}x{phi_count}")

    spin = SpinParams(state.dim - 1)
    theta = theta_nodes(theta_count)
    phi = phi_nodes(phi_count)
    # Coherent amplitudes at phi = 0 are real; the phi dependence is e^{-i phi m}.
    polar = np.real(coherent_amplitudes(spin, theta, np.zeros_like(theta)))
    weighted = polar.T * state.amplitudes[None, :]
    azimuthal = np.exp(1j * np.outer(spin.m_values, phi))
    values = np.abs(weighted @ azimuthal) ** 2
    values.setflags(write=False)
    return HusimiField(spin=spin, theta=theta, phi=phi, values=values)


def count_peaks(field: HusimiField, rel: float = 0.5) -> int:
    """Number of local maxima above rel * q_max, with phi treated as periodic.

    Adjacent cells sharing a plateau count once.
    """
    values = np.asarray(field.values)
    local_max = ndimage.maximum_filter(values, size=3, mode=("nearest", "wrap"))
    peaks = (values == local_max) & (values > rel * field.q_max)
    labels, count = ndimage.label(peaks)
    if count > 1:
        # Merge labels that meet across the phi seam.
        seam = set()
        for row in range(values.shape[0]):
            a, b = labels[row, 0], labels[row, -1]
            if a and b and a != b:
                seam.add((min(a, b), max(a, b)))
        count -= len(seam)
    return int(count)


def trajectory_husimi(
    U: DenseOperator,
    state: StateVector,
    kicks: Iterable[int],
    theta_count: int = 140,
    phi_count: int = 280,
) -> dict[int, HusimiField]:
    """Husimi snapshots of U^k |psi> at the requested kicks."""
    if U.dim != state.dim:
        raise DimensionMismatchError(f"operator is {U.dim}x{U.dim}, state has length {state.dim}")

    wanted = sorted(set(kicks))
    if any(k < 0 for k in wanted):
        raise ValueError("kick indices must be non-negative")

    fields: dict[int, HusimiField] = {}
    current = state.amplitudes
    kick = 0
    for target in wanted:
        while kick < target:
            current = U.matrix @ current
            current = current / np.linalg.norm(current)
            kick += 1
        fields[target] = husimi(StateVector(current), theta_count, phi_count)
        logger.debug(f"Husimi at kick {target}: q_max={fields[target].q_max:.4f}")
    return fields
