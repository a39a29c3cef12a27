"""Integration tests for the large-spin and full-grid landmarks."""

import pytest

from kickedtop.core.parallel import WorkerPool
from kickedtop.floquet.unitary import FloquetSpec, KappaClass, build_floquet, matrix_power
from kickedtop.observables.entropy import min_entropy_by_spin
from kickedtop.observables.stability import mean_landscape_vs_spin, stability_landscape
from kickedtop.recurrence.period import identity_error
from kickedtop.recurrence.search import SearchConfig, search_rational_kappa
from kickedtop.recurrence.table import reproduce_table, spin_range
from kickedtop.spin.types import CoherentParams, SpinParams


@pytest.mark.slow
class TestLandmarks:
    """Long runs against published reference values."""

    def test_large_spin_recurrence(self) -> None:
        """Test that U^48 at kappa = pi j / 2 is the identity at j = 500."""
        U = build_floquet(FloquetSpec.for_class(SpinParams.from_j(500), KappaClass.HALF_PJ))
        assert identity_error(matrix_power(U, 48)) < 1e-10

    def test_full_table(self) -> None:
        """Test every class for j = 1/2 .. 10."""
        with WorkerPool(4) as pool:
            rows = reproduce_table(spin_range(0.5, 10), pool=pool, strict=True)
        assert len(rows) == 20 * len(KappaClass)
        assert all(row.match for row in rows)

    @pytest.mark.parametrize(
        ("delta", "low", "high"),
        [
            (0.001, 7e-12, 7e-10),
            (1.0, 0.6097 * 0.95, 0.6097 * 1.05),
            (3.0, 0.6868 * 0.95, 0.6868 * 1.05),
        ],
    )
    def test_stability_landmarks(self, delta: float, low: float, high: float) -> None:
        """Test s_max at j = 31/2 on the 70 x 140 grid."""
        with WorkerPool(4) as pool:
            landscape = stability_landscape(SpinParams.from_j(15.5), "pj", delta, pool=pool)
        assert landscape.orbit_n == 12
        assert low < landscape.s_max < high

    def test_half_integer_half_pj_stays_entangled(self) -> None:
        """Test that no half-integer spin up to 31/2 returns near a product state at pi j / 2."""
        spins = [spin for spin in spin_range(1.5, 15.5) if not spin.is_integer]
        with WorkerPool(4) as pool:
            rows = min_entropy_by_spin(spins, "pj/2", CoherentParams(2.25, 2.0), 1000, pool)
        assert len(rows) == 15
        assert min(row.min_entropy for row in rows) > 1e-5

    def test_rational_search_finds_only_table_classes(self) -> None:
        """Test that r, s <= 5 and j <= 15/2 recur only in the table classes."""
        cfg = SearchConfig(r_max=5, s_max=5, j_values=tuple(spin_range(1.5, 7.5)), n_kicks=500)
        with WorkerPool(4) as pool:
            results = search_rational_kappa(cfg, pool)
        assert all(res.table_class is not None for res in results if res.period is not None)
        outside = [res.min_entropy for res in results if res.table_class is None]
        assert outside
        assert min(outside) > 1e-7

    def test_mean_entropy_grows_with_perturbation(self) -> None:
        """Test that the grid mean at j = 31/2 increases with delta."""
        with WorkerPool(4) as pool:
            summaries = mean_landscape_vs_spin([SpinParams.from_j(15.5)], [0.001, 0.1, 1.0], pool=pool)
        means = [summary.mean_entropy for summary in summaries]
        assert means[0] < means[1] < means[2]
        assert means[0] < 1e-9
