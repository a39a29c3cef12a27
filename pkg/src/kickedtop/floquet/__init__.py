"""Floquet operators of the kicked top and stroboscopic evolution."""

from kickedtop.floquet.unitary import (
    FloquetSpec,
    KappaClass,
    PerturbedSpec,
    apply_kicks,
    build_floquet,
    build_perturbed,
    evolve_amplitudes,
    matrix_power,
    resolve_kappa,
)

__all__ = [
    "FloquetSpec",
    "KappaClass",
    "PerturbedSpec",
    "apply_kicks",
    "build_floquet",
    "build_perturbed",
    "evolve_amplitudes",
    "matrix_power",
    "resolve_kappa",
]
