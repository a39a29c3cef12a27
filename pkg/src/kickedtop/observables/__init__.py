"""Husimi fields, reduced-qubit entropies and stability landscapes."""

from kickedtop.observables.entropy import (
    MinEntropyRow,
    ReducedQubit,
    entropy_series,
    linear_entropy,
    min_entropy_by_spin,
    min_entropy_scan,
    reduced_qubit,
    three_halves_linear_entropy,
    von_neumann_entropy,
)
from kickedtop.observables.husimi import HusimiField, count_peaks, husimi, trajectory_husimi
from kickedtop.observables.stability import (
    EntropyLandscape,
    LandscapeSummary,
    mean_landscape_vs_spin,
    stability_landscape,
)

__all__ = [
    "EntropyLandscape",
    "HusimiField",
    "LandscapeSummary",
    "MinEntropyRow",
    "ReducedQubit",
    "count_peaks",
    "entropy_series",
    "husimi",
    "linear_entropy",
    "mean_landscape_vs_spin",
    "min_entropy_by_spin",
    "min_entropy_scan",
    "reduced_qubit",
    "stability_landscape",
    "three_halves_linear_entropy",
    "trajectory_husimi",
    "von_neumann_entropy",
]
