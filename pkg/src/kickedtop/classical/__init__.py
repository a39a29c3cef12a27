"""Classical kicked-top map."""

from kickedtop.classical.kicked_map import (
    ClassicalPoint,
    classical_step,
    coverage_fraction,
    iterate,
    stroboscopic_map,
    uniform_initials,
)

__all__ = [
    "ClassicalPoint",
    "classical_step",
    "coverage_fraction",
    "iterate",
    "stroboscopic_map",
    "uniform_initials",
]
