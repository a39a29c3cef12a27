"""Unit tests for the classical kicked-top map."""

import math

import numpy as np
import pytest

from kickedtop.classical import (
    ClassicalPoint,
    classical_step,
    coverage_fraction,
    iterate,
    stroboscopic_map,
    uniform_initials,
)
from kickedtop.core.parallel import WorkerPool


class TestClassicalPoint:
    """Test cases for points on the unit sphere."""

    def test_off_sphere_rejected(self) -> None:
        """Test that a non-unit vector is rejected."""
        with pytest.raises(ValueError):
            ClassicalPoint(1.0, 1.0, 0.0)

    def test_angles_round_trip(self) -> None:
        """Test from_angles followed by angles."""
        point = ClassicalPoint.from_angles(2.25, 2.0)
        assert point.norm() == pytest.approx(1.0, abs=1e-15)
        assert point.angles() == pytest.approx((2.25, 2.0))


class TestClassicalMap:
    """Test cases for the stroboscopic map."""

    def test_zero_twist_is_quarter_turn(self) -> None:
        """Test that kappa = 0 returns every point after four kicks."""
        point = ClassicalPoint.from_angles(1.1, 0.4)
        trajectory = iterate(point, 0.0, 4)
        np.testing.assert_allclose(trajectory[1], [point.z, point.y, -point.x], atol=1e-15)
        np.testing.assert_allclose(trajectory[4], trajectory[0], atol=1e-15)

    def test_y_axis_fixed(self) -> None:
        """Test that (0, 1, 0) is fixed for any kappa."""
        trajectory = iterate(ClassicalPoint(0.0, 1.0, 0.0), 3.7, 10)
        np.testing.assert_allclose(trajectory, np.tile([0.0, 1.0, 0.0], (11, 1)), atol=1e-15)

    def test_norm_preserved(self) -> None:
        """Test that trajectories stay on the sphere."""
        trajectory = iterate(ClassicalPoint.from_angles(2.25, 2.0), 6.0, 150)
        assert trajectory.shape == (151, 3)
        assert np.max(np.abs(np.linalg.norm(trajectory, axis=1) - 1.0)) < 1e-12

    def test_step_matches_iterate(self) -> None:
        """Test the scalar step against the array iteration."""
        point = ClassicalPoint.from_angles(0.8, 5.0)
        step = classical_step(point, 2.5)
        np.testing.assert_allclose(iterate(point, 2.5, 1)[1], [step.x, step.y, step.z], atol=1e-15)

    def test_stroboscopic_map(self) -> None:
        """Test (theta, phi) trajectories for a grid of initial points."""
        initials = uniform_initials(3, 4)
        assert len(initials) == 12
        with WorkerPool(2) as pool:
            trajectories = stroboscopic_map(initials, 2.5, 20, pool)
        assert len(trajectories) == 12
        assert all(t.shape == (21, 2) for t in trajectories)
        assert tuple(trajectories[0][0]) == pytest.approx(initials[0].angles())
        theta = np.concatenate([t[:, 0] for t in trajectories])
        assert np.all((theta >= 0.0) & (theta <= math.pi))

    def test_negative_kicks(self) -> None:
        """Test that a negative kick count is rejected."""
        with pytest.raises(ValueError):
            stroboscopic_map(uniform_initials(1, 1), 1.0, -1)

    def test_coverage(self) -> None:
        """Test coverage of a fixed point and of a chaotic orbit."""
        fixed = stroboscopic_map([ClassicalPoint(0.0, 1.0, 0.0)], 6.0, 50)[0]
        assert coverage_fraction(fixed) == pytest.approx(1 / 800)
        chaotic = stroboscopic_map([ClassicalPoint.from_angles(2.25, 2.0)], 6.0, 2000)[0]
        assert coverage_fraction(chaotic) > coverage_fraction(fixed)
