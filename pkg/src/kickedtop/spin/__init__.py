"""Spin-j representation: operators, rotations, twists and coherent states."""

from kickedtop.spin.coherent import (
    basis_state,
    coherent_amplitudes,
    coherent_state,
    haar_random_state,
    named_state,
    resolve_initial_state,
)
from kickedtop.spin.operators import (
    AngularMomentum,
    build_angular_momentum,
    dicke_phase_table,
    rotation_y,
    rotation_z,
    twist,
    twist_phases,
)
from kickedtop.spin.types import (
    IDENTITY_TOL,
    NAMED_STATES,
    CoherentParams,
    DenseOperator,
    Parity,
    SpinParams,
    StateVector,
)

__all__ = [
    "IDENTITY_TOL",
    "NAMED_STATES",
    "AngularMomentum",
    "CoherentParams",
    "DenseOperator",
    "Parity",
    "SpinParams",
    "StateVector",
    "basis_state",
    "build_angular_momentum",
    "coherent_amplitudes",
    "coherent_state",
    "dicke_phase_table",
    "haar_random_state",
    "named_state",
    "resolve_initial_state",
    "rotation_y",
    "rotation_z",
    "twist",
    "twist_phases",
]
