"""
Value types for the spin-j representation.

All matrices use the descending-m basis: row/column k holds the magnetic
quantum number m = j - k, so |j, j> is the first basis vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Literal, Union, overload

import numpy as np
from numpy.typing import NDArray

from kickedtop.core.exceptions import DimensionMismatchError, SpinValueError

ComplexArray = NDArray[np.complex128]
RealArray = NDArray[np.float64]

CONSTRUCTION_TOL = 1e-12
IDENTITY_TOL = 1e-10


class Parity(str, Enum):
    """Whether the spin is integer or half-integer."""

    INTEGER = "integer"
    HALF_INTEGER = "half-integer"


@dataclass(frozen=True)
class SpinParams:
    """Spin magnitude j, stored exactly as the integer 2j."""

    twice_j: int

    def __post_init__(self) -> None:
        if not isinstance(self.twice_j, (int, np.integer)) or self.twice_j < 0:
            raise SpinValueError(f"2j must be a non-negative integer, got {self.twice_j}")
        object.__setattr__(self, "twice_j", int(self.twice_j))

    @classmethod
    def from_j(cls, j: float) -> SpinParams:
        """Build from a spin value such as 1, 1.5 or 15.5.

        Raises:
            SpinValueError: If 2j is not a non-negative integer.
        """
        twice = 2.0 * float(j)
        if not math.isfinite(twice) or abs(twice - round(twice)) > 1e-9 or twice < 0:
            raise SpinValueError(f"spin must be a non-negative multiple of 1/2, got {j}")
        return cls(int(round(twice)))

    @property
    def j(self) -> float:
        return self.twice_j / 2.0

    @property
    def dim(self) -> int:
        return self.twice_j + 1

    @property
    def n_qubits(self) -> int:
        """Number of symmetric qubits in the qubit picture (n = 2j)."""
        return self.twice_j

    @property
    def parity(self) -> Parity:
        return Parity.INTEGER if self.twice_j % 2 == 0 else Parity.HALF_INTEGER

    @property
    def is_integer(self) -> bool:
        return self.parity is Parity.INTEGER

    @property
    def m_values(self) -> RealArray:
        """Magnetic quantum numbers j, j-1, ..., -j."""
        return self.j - np.arange(self.dim, dtype=np.float64)

    def require_positive(self) -> None:
        """Reject j = 0, which appears in the 1/(2j) twist scale."""
        if self.twice_j == 0:
            raise SpinValueError("j = 0 is not supported (the twist divides by 2j)")

    def __str__(self) -> str:
        return f"{self.twice_j}/2" if self.twice_j % 2 else str(self.twice_j // 2)


OperatorKind = Literal["unitary", "hermitian", "general"]


def _frozen(array: NDArray) -> ComplexArray:
    out = np.array(array, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure spin-j state in the descending-m basis."""

    amplitudes: ComplexArray = field(repr=False)

    def __post_init__(self) -> None:
        amplitudes = np.asarray(self.amplitudes)
        if amplitudes.ndim != 1:
            raise DimensionMismatchError(f"state must be a vector, got shape {amplitudes.shape}")
        object.__setattr__(self, "amplitudes", _frozen(amplitudes))

    @property
    def dim(self) -> int:
        return int(self.amplitudes.shape[0])

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> StateVector:
        return StateVector(self.amplitudes / self.norm)

    def overlap(self, other: StateVector) -> complex:
        """Inner product <self|other>."""
        if other.dim != self.dim:
            raise DimensionMismatchError(f"dimensions differ: {self.dim} vs {other.dim}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: StateVector) -> float:
        """|<self|other>|, insensitive to global phase."""
        return abs(self.overlap(other))


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """Dense D x D complex matrix with declared structure."""

    matrix: ComplexArray = field(repr=False)
    kind: OperatorKind = "general"

    def __post_init__(self) -> None:
        matrix = np.asarray(self.matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatchError(f"operator must be square, got shape {matrix.shape}")
        object.__setattr__(self, "matrix", _frozen(matrix))

    @classmethod
    def identity(cls, dim: int) -> DenseOperator:
        return cls(np.eye(dim, dtype=np.complex128), kind="unitary")

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def dagger(self) -> DenseOperator:
        return DenseOperator(self.matrix.conj().T, kind=self.kind)

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def unitarity_error(self) -> float:
        """Max-entry norm of U^dagger U - I."""
        product = self.matrix.conj().T @ self.matrix
        return float(np.max(np.abs(product - np.eye(self.dim))))

    def hermiticity_error(self) -> float:
        """Max-entry norm of A - A^dagger."""
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def max_deviation(self, other: DenseOperator) -> float:
        """Max-entry norm of self - other."""
        if other.dim != self.dim:
            raise DimensionMismatchError(f"dimensions differ: {self.dim} vs {other.dim}")
        return float(np.max(np.abs(self.matrix - other.matrix)))

    def scaled(self, factor: complex) -> DenseOperator:
        kind: OperatorKind = "unitary" if self.kind == "unitary" and abs(abs(factor) - 1) < 1e-15 else "general"
        return DenseOperator(factor * self.matrix, kind=kind)

    @overload
    def __matmul__(self, other: DenseOperator) -> DenseOperator: ...

    @overload
    def __matmul__(self, other: StateVector) -> StateVector: ...

    def __matmul__(self, other: Union[DenseOperator, StateVector]) -> Union[DenseOperator, StateVector]:
        if isinstance(other, StateVector):
            if other.dim != self.dim:
                raise DimensionMismatchError(f"operator is {self.dim}x{self.dim}, state has length {other.dim}")
            return StateVector(self.matrix @ other.amplitudes)
        if isinstance(other, DenseOperator):
            if other.dim != self.dim:
                raise DimensionMismatchError(f"dimensions differ: {self.dim} vs {other.dim}")
            kind: OperatorKind = "unitary" if self.kind == other.kind == "unitary" else "general"
            return DenseOperator(self.matrix @ other.matrix, kind=kind)
        return NotImplemented


@dataclass(frozen=True)
class CoherentParams:
    """Bloch-sphere angles of a spin coherent state, canonicalized on creation.

    theta lies in [0, pi] and phi in [0, 2 pi).
    """

    theta: float
    phi: float

    def __post_init__(self) -> None:
        theta = math.fmod(float(self.theta), 2 * math.pi)
        phi = float(self.phi)
        if theta < 0:
            theta += 2 * math.pi
        if theta > math.pi:
            theta = 2 * math.pi - theta
            phi += math.pi
        phi = math.fmod(phi, 2 * math.pi)
        if phi < 0:
            phi += 2 * math.pi
        if phi >= 2 * math.pi:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    def unit_vector(self) -> tuple[float, float, float]:
        """Cartesian direction (x, y, z) on the unit sphere."""
        s = math.sin(self.theta)
        return (s * math.cos(self.phi), s * math.sin(self.phi), math.cos(self.theta))


NAMED_STATES: dict[str, CoherentParams] = {
    "+z": CoherentParams(0.0, 0.0),
    "-z": CoherentParams(math.pi, 0.0),
    "+x": CoherentParams(math.pi / 2, 0.0),
    "-x": CoherentParams(math.pi / 2, math.pi),
    "+y": CoherentParams(math.pi / 2, math.pi / 2),
    "-y": CoherentParams(math.pi / 2, 3 * math.pi / 2),
}
