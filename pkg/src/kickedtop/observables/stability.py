"""
Stability of recurrences under a twist perturbation.

For a recurrence class with period N, U_{kappa + delta}^N is applied
repeatedly to every coherent state of a (theta, phi) grid and the reduced
qubit entropy is averaged over the applications. An exact recurrence keeps
every sample coherent, so the landscape stays at zero.
"""

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from kickedtop.core.exceptions import ConfigurationError
from kickedtop.core.logger import get_logger
from kickedtop.core.parallel import WorkerPool, resolve_pool
from kickedtop.floquet.unitary import FloquetSpec, KappaClass, PerturbedSpec, build_perturbed, matrix_power
from kickedtop.observables.entropy import LN2, bloch_lengths, entropy_from_bloch
from kickedtop.observables.husimi import phi_nodes, theta_nodes
from kickedtop.recurrence.table import expected_periods
from kickedtop.spin.coherent import coherent_amplitudes
from kickedtop.spin.types import RealArray, SpinParams

logger = get_logger("observables.stability")

# Fixed so column blocks, and therefore every bit of output, do not depend on the thread count.
CHUNK_COLUMNS = 512


@dataclass(frozen=True, eq=False)
class EntropyLandscape:
    """Time-averaged entropy per initial coherent state."""

    j: float
    kappa_class: str
    kappa_tilde: float
    delta: float
    orbit_n: int
    applications: int
    theta: RealArray = field(repr=False)
    phi: RealArray = field(repr=False)
    values: RealArray = field(repr=False)

    @property
    def s_max(self) -> float:
        return float(self.values.max())

    @property
    def mean(self) -> float:
        return float(self.values.mean())

    def metadata(self) -> dict[str, Union[float, int, str]]:
        return {
            "j": self.j,
            "kappa_class": self.kappa_class,
            "kappa_tilde": self.kappa_tilde,
            "delta": self.delta,
            "orbit_n": self.orbit_n,
            "applications": self.applications,
            "s_max": self.s_max,
        }

    def rows(self) -> Iterable[tuple[float, float, float]]:
        for i, theta in enumerate(self.theta):
            for k, phi in enumerate(self.phi):
                yield float(theta), float(phi), float(self.values[i, k])


def orbit_period(spin: SpinParams, kappa_class: Union[str, KappaClass]) -> int:
    """The recurrence period used as the sampling stride.

    Raises:
        ConfigurationError: If the class has no recurrence at this spin.
    """
    kclass = KappaClass.parse(kappa_class)
    periods = expected_periods(spin, kclass)
    if None in periods:
        raise ConfigurationError(
            f"kappa class {kclass.value} has no recurrence for j={spin}; stability needs a recurrence class",
            key="kappa-class",
        )
    # Any accepted period divides the largest one, which is therefore a recurrence.
    return max(p for p in periods if p is not None)


def stability_landscape(
    spin: SpinParams,
    kappa_class: Union[str, KappaClass],
    delta: float,
    applications: int = 10,
    theta_count: int = 70,
    phi_count: int = 140,
    orbit_n: Optional[int] = None,
    pool: Optional[WorkerPool] = None,
) -> EntropyLandscape:
    """Average entropy of U_{kappa + delta}^{N n} |theta, phi> over n = 1..applications.

    Args:
        spin: Spin parameters.
        kappa_class: Recurrence class of the unperturbed twist.
        delta: Twist perturbation.
        applications: Number of orbit applications averaged.
        theta_count: Polar grid size.
        phi_count: Azimuthal grid size.
        orbit_n: Stride; defaults to the class period and must be a multiple of it.
        pool: Worker pool over column blocks of the grid.

    Returns:
        The entropy landscape.

    Raises:
        ConfigurationError: If the class has no recurrence at this spin, or
            orbit_n is not a whole number of periods.
    """
    if applications < 1:
        raise ConfigurationError(f"applications must be >= 1, got {applications}", key="applications")
    kclass = KappaClass.parse(kappa_class)
    period = orbit_period(spin, kclass)
    stride = period if orbit_n is None else orbit_n
    if stride < 1 or stride % period:
        raise ConfigurationError(
            f"orbit_n={stride} is not a multiple of the period {period} of {kclass.value} at j={spin}", key="orbit-n"
        )

    base = FloquetSpec.for_class(spin, kclass)
    orbit = matrix_power(build_perturbed(PerturbedSpec(base=base, delta=delta)), stride).matrix

    theta = theta_nodes(theta_count)
    phi = phi_nodes(phi_count)
    grid_theta, grid_phi = np.meshgrid(theta, phi, indexing="ij")
    states = coherent_amplitudes(spin, grid_theta.ravel(), grid_phi.ravel())

    def average_block(bounds: tuple[int, int]) -> RealArray:
        current = states[:, bounds[0] : bounds[1]]
        total = np.zeros(current.shape[1])
        for _ in range(applications):
            current = orbit @ current
            current = current / np.linalg.norm(current, axis=0)
            total += entropy_from_bloch(bloch_lengths(spin, current), "vn")
        return total / applications

    cells = states.shape[1]
    blocks = [(start, min(start + CHUNK_COLUMNS, cells)) for start in range(0, cells, CHUNK_COLUMNS)]
    logger.info(f"Stability j={spin} class={kclass.value} delta={delta}: {cells} cells, stride {stride}")
    averaged = np.concatenate(resolve_pool(pool).map_ordered(average_block, blocks))
    values = np.clip(averaged, 0.0, LN2).reshape(theta_count, phi_count)
    values.setflags(write=False)

    return EntropyLandscape(
        j=spin.j,
        kappa_class=kclass.value,
        kappa_tilde=base.kappa,
        delta=delta,
        orbit_n=stride,
        applications=applications,
        theta=theta,
        phi=phi,
        values=values,
    )


@dataclass(frozen=True)
class LandscapeSummary:
    """Grid mean and maximum of one landscape."""

    j: float
    delta: float
    mean_entropy: float
    s_max: float


def mean_landscape_vs_spin(
    spins: Iterable[SpinParams],
    delta_values: Iterable[float],
    kappa_class: Union[str, KappaClass] = KappaClass.PJ,
    applications: int = 10,
    theta_count: int = 70,
    phi_count: int = 140,
    pool: Optional[WorkerPool] = None,
    on_landscape: Optional[Callable[[EntropyLandscape], None]] = None,
) -> list[LandscapeSummary]:
    """Grid-mean time-averaged entropy for every (spin, delta) pair.

    on_landscape, if given, receives each landscape as it is computed.
    """
    summaries = []
    deltas = list(delta_values)
    for spin in spins:
        for delta in deltas:
            landscape = stability_landscape(
                spin, kappa_class, delta, applications, theta_count, phi_count, pool=pool
            )
            if on_landscape is not None:
                on_landscape(landscape)
            summaries.append(
                LandscapeSummary(j=spin.j, delta=delta, mean_entropy=landscape.mean, s_max=landscape.s_max)
            )
    return summaries
