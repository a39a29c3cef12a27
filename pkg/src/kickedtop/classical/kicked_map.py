"""
Classical kicked top.

The stroboscopic map on the unit sphere is
    X' = Z cos(kappa X) + Y sin(kappa X)
    Y' = Y cos(kappa X) - Z sin(kappa X)
    Z' = -X
a rotation by pi/2 about y followed by a twist about z by kappa X.
"""

import math
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Optional

import numpy as np

from kickedtop.core.logger import get_logger
from kickedtop.core.parallel import WorkerPool, resolve_pool
from kickedtop.observables.husimi import phi_nodes, theta_nodes
from kickedtop.spin.types import RealArray

logger = get_logger("classical")

NORM_TOL = 1e-12


@dataclass(frozen=True)
class ClassicalPoint:
    """Unit angular-momentum vector J / j."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        if abs(self.norm() - 1.0) > NORM_TOL:
            raise ValueError(f"point must lie on the unit sphere, norm is {self.norm()!r}")

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "ClassicalPoint":
        s = math.sin(theta)
        return cls(s * math.cos(phi), s * math.sin(phi), math.cos(theta))

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def angles(self) -> tuple[float, float]:
        """(theta, phi) with theta = arccos z and phi = atan2(y, x)."""
        return math.acos(max(-1.0, min(1.0, self.z))), math.atan2(self.y, self.x)


def _step_arrays(x: RealArray, y: RealArray, z: RealArray, kappa: float) -> tuple[RealArray, RealArray, RealArray]:
    c = np.cos(kappa * x)
    s = np.sin(kappa * x)
    return z * c + y * s, y * c - z * s, -x


def classical_step(point: ClassicalPoint, kappa: float) -> ClassicalPoint:
    """One kick of the classical map."""
    c = math.cos(kappa * point.x)
    s = math.sin(kappa * point.x)
    return ClassicalPoint(point.z * c + point.y * s, point.y * c - point.z * s, -point.x)


def iterate(point: ClassicalPoint, kappa: float, kicks: int) -> RealArray:
    """Cartesian trajectory, shape (kicks + 1, 3), starting with the point itself."""
    out = np.empty((kicks + 1, 3))
    x, y, z = np.array([point.x]), np.array([point.y]), np.array([point.z])
    out[0] = (point.x, point.y, point.z)
    for k in range(1, kicks + 1):
        x, y, z = _step_arrays(x, y, z, kappa)
        out[k] = (x[0], y[0], z[0])
    return out


def stroboscopic_map(
    initials: Iterable[ClassicalPoint],
    kappa: float,
    kicks: int,
    pool: Optional[WorkerPool] = None,
) -> list[RealArray]:
    """(theta, phi) trajectories for every initial point.

    Args:
        initials: Unit-norm starting points.
        kappa: Twist strength.
        kicks: Number of kicks.
        pool: Worker pool; trajectories are independent.

    Returns:
        One (kicks + 1, 2) array of (theta, phi) per initial point.
    """
    if kicks < 0:
        raise ValueError(f"kicks must be non-negative, got {kicks}")

    def trajectory(point: ClassicalPoint) -> RealArray:
        xyz = iterate(point, kappa, kicks)
        theta = np.arccos(np.clip(xyz[:, 2], -1.0, 1.0))
        phi = np.arctan2(xyz[:, 1], xyz[:, 0])
        return np.column_stack((theta, phi))

    points = list(initials)
    logger.info(f"Classical map kappa={kappa}: {len(points)} trajectories of {kicks} kicks")
    return resolve_pool(pool).map_ordered(trajectory, points)


def uniform_initials(theta_count: int, phi_count: int) -> list[ClassicalPoint]:
    """Initial points on the same uniform (theta, phi) grid used for Husimi fields."""
    return [ClassicalPoint.from_angles(t, p) for t in theta_nodes(theta_count) for p in phi_nodes(phi_count)]


def coverage_fraction(trajectory: RealArray, z_bins: int = 20, phi_bins: int = 40) -> float:
    """Fraction of equal-area (z, phi) bins visited by a (theta, phi) trajectory."""
    z = np.cos(trajectory[:, 0])
    phi = np.mod(trajectory[:, 1], 2.0 * math.pi)
    counts, _, _ = np.histogram2d(z, phi, bins=(z_bins, phi_bins), range=((-1.0, 1.0), (0.0, 2.0 * math.pi)))
    return float(np.count_nonzero(counts)) / (z_bins * phi_bins)
