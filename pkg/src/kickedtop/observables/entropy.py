"""
Single-qubit reduced states and their entropies.

In the qubit picture a spin-j state is a symmetric state of 2j qubits. One
qubit's reduced density matrix follows from the collective expectations
<S_z> and <S_+> with S = J / j, so nothing is ever built in the 2^n space.
"""

import math
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from typing import Literal, Optional, Union

import numpy as np
from scipy import special

from kickedtop.core.logger import get_logger
from kickedtop.core.parallel import WorkerPool, resolve_pool
from kickedtop.floquet.unitary import HALF_PI, FloquetSpec, KappaClass, build_floquet
from kickedtop.spin.coherent import coherent_state
from kickedtop.spin.types import CoherentParams, RealArray, SpinParams, StateVector

logger = get_logger("observables.entropy")

EntropyKind = Literal["vn", "linear"]

LN2 = math.log(2.0)


@dataclass(frozen=True, eq=False)
class ReducedQubit:
    """2x2 single-qubit density matrix.

    Ordered as [[1 - <S_z>, <S_->], [<S_+>, 1 + <S_z>]] / 2.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=np.complex128)
        if matrix.shape != (2, 2):
            raise ValueError(f"reduced qubit must be 2x2, got {matrix.shape}")
        if np.max(np.abs(matrix - matrix.conj().T)) > 1e-12 or abs(np.trace(matrix) - 1.0) > 1e-12:
            raise ValueError("reduced qubit must be Hermitian with unit trace")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def from_expectations(cls, sz: float, s_plus: complex) -> "ReducedQubit":
        return cls(0.5 * np.array([[1.0 - sz, np.conj(s_plus)], [s_plus, 1.0 + sz]]))

    @property
    def bloch_length(self) -> float:
        """|r| with r = (<S_x>, <S_y>, <S_z>), clipped to [0, 1]."""
        sz = float(np.real(self.matrix[1, 1] - self.matrix[0, 0]))
        s_plus = 2.0 * self.matrix[1, 0]
        return min(1.0, math.sqrt(sz * sz + abs(s_plus) ** 2))

    def eigenvalues(self) -> tuple[float, float]:
        r = self.bloch_length
        return (0.5 * (1.0 - r), 0.5 * (1.0 + r))


def _collective(spin: SpinParams, amplitudes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """<S_z> and <S_+> for one state or a (D, cells) batch."""
    j = spin.j
    m = spin.m_values
    probabilities = np.abs(amplitudes) ** 2
    ladder = np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1))
    if amplitudes.ndim == 2:
        m = m[:, None]
        ladder = ladder[:, None]
    sz = np.sum(m * probabilities, axis=0) / j
    # (J_+ psi)[k] = ladder[k] psi[k + 1] in the descending-m basis.
    s_plus = np.sum(amplitudes[:-1].conj() * ladder * amplitudes[1:], axis=0) / j
    return sz, s_plus


def reduced_qubit(state: StateVector) -> ReducedQubit:
    """Reduced state of one of the 2j symmetric qubits.

    Args:
        state: Pure spin-j state, j >= 1/2.

    Returns:
        The single-qubit density matrix.
    """
    spin = SpinParams(state.dim - 1)
    spin.require_positive()
    sz, s_plus = _collective(spin, state.amplitudes)
    return ReducedQubit.from_expectations(float(sz), complex(s_plus))


def bloch_lengths(spin: SpinParams, amplitudes: np.ndarray) -> RealArray:
    """Reduced-qubit Bloch vector lengths for a (D, cells) batch of states."""
    sz, s_plus = _collective(spin, amplitudes)
    return np.minimum(1.0, np.sqrt(sz**2 + np.abs(s_plus) ** 2))


def entropy_from_bloch(lengths: Union[RealArray, float], kind: EntropyKind = "vn") -> Union[RealArray, float]:
    """Entropy of a qubit with Bloch vector length |r| (eigenvalues (1 +- |r|) / 2)."""
    r = np.asarray(lengths, dtype=np.float64)
    if kind == "linear":
        return 0.5 * (1.0 - r * r)
    return special.entr(0.5 * (1.0 - r)) + special.entr(0.5 * (1.0 + r))


def von_neumann_entropy(rho: ReducedQubit) -> float:
    """-sum lambda ln lambda over the eigenvalues, in [0, ln 2]."""
    return float(entropy_from_bloch(rho.bloch_length, "vn"))


def linear_entropy(rho: ReducedQubit) -> float:
    """1 - Tr rho^2, in [0, 1/2]."""
    return float(max(0.0, 1.0 - np.real(np.trace(rho.matrix @ rho.matrix))))


def three_halves_linear_entropy(n: Union[int, np.ndarray], kappa: float) -> Union[float, np.ndarray]:
    """Closed-form linear entropy of U^n |+y> at j = 3/2.

    S = 4 chi^2 U_{n-1}(chi)^2 (1 - 2 chi^2 U_{n-1}(chi)^2) with
    chi = sin(kappa / 3) / 2 and U the Chebyshev polynomial of the second kind.

    Args:
        n: Kick count(s), n >= 1.
        kappa: Twist strength.

    Returns:
        Linear entropy per kick count.
    """
    kicks = np.asarray(n)
    if np.any(kicks < 1):
        raise ValueError("kick count must be >= 1")
    chi = 0.5 * math.sin(kappa / 3.0)
    u = special.eval_chebyu(kicks - 1, chi)
    weight = 4.0 * chi * chi * u * u
    value = weight * (1.0 - 0.5 * weight)
    return float(value) if np.ndim(value) == 0 else value


def entropy_series(
    spin: SpinParams,
    kappa: float,
    state: StateVector,
    n_kicks: int,
    kind: EntropyKind = "vn",
    p: float = HALF_PI,
) -> RealArray:
    """Single-qubit entropy at kicks 0..n_kicks.

    Returns:
        Array of length n_kicks + 1.
    """
    U = build_floquet(FloquetSpec(spin=spin, kappa=kappa, p=p))
    lengths = np.empty(n_kicks + 1)
    current = state.amplitudes
    lengths[0] = bloch_lengths(spin, current[:, None])[0]
    for kick in range(1, n_kicks + 1):
        current = U.matrix @ current
        current = current / np.linalg.norm(current)
        lengths[kick] = bloch_lengths(spin, current[:, None])[0]
    return np.asarray(entropy_from_bloch(lengths, kind))


def min_entropy_scan(
    spin: SpinParams,
    kappa: float,
    initial: Union[CoherentParams, StateVector],
    n_kicks: int,
    p: float = HALF_PI,
) -> tuple[float, int]:
    """Minimum von Neumann entropy over kicks 1..n_kicks.

    Returns:
        (minimum entropy, kick at which it first occurs).
    """
    if n_kicks < 1:
        raise ValueError(f"n_kicks must be >= 1, got {n_kicks}")
    state = initial if isinstance(initial, StateVector) else coherent_state(spin, initial)
    series = entropy_series(spin, kappa, state, n_kicks, "vn", p)[1:]
    kick = int(np.argmin(series))
    return float(series[kick]), kick + 1


@dataclass(frozen=True)
class MinEntropyRow:
    """Minimum entropy for one spin."""

    j: float
    kappa: float
    min_entropy: float
    kick: int


def min_entropy_by_spin(
    spins: Iterable[SpinParams],
    kappa_class: Union[str, KappaClass],
    initial: CoherentParams,
    n_kicks: int,
    pool: Optional[WorkerPool] = None,
    p: float = HALF_PI,
    on_row: Optional[Callable[[MinEntropyRow], None]] = None,
) -> list[MinEntropyRow]:
    """Minimum entropy versus spin for one kappa class.

    on_row is called from the worker thread as each spin finishes.
    """
    kclass = KappaClass.parse(kappa_class)

    def scan(spin: SpinParams) -> MinEntropyRow:
        kappa = kclass.kappa(spin)
        value, kick = min_entropy_scan(spin, kappa, initial, n_kicks, p)
        logger.debug(f"j={spin}: min entropy {value:.3e} at kick {kick}")
        row = MinEntropyRow(j=spin.j, kappa=kappa, min_entropy=value, kick=kick)
        if on_row is not None:
            on_row(row)
        return row

    return resolve_pool(pool).map_ordered(scan, list(spins))
