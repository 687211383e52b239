"""Tests for the ball-averaged current and the directional density."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from fockdens.exceptions import InvalidParameterError
from fockdens.models import Hypersurface, MultiPoly, Weight
from fockdens.models.reports import Monotonicity
from fockdens.services.density import (
    UpsilonMethod,
    density_at,
    density_scan,
    density_trend,
    estimate_upsilon,
    signed_excess,
    upsilon,
)
from fockdens.services.hypersurface import sample_surface_in_ball

SURFACES_AND_CENTERS = [
    ("hyperplane", [0.0, 0.0]),
    ("parabola", [0.0, 0.0]),
    ("hyperbola", [1.0, 1.0]),
]


class TestUpsilon:
    """Tests for Upsilon_W(z, r)."""

    def test_single_zero_in_the_plane(self):
        """One simple zero at the center of the unit disc gives Upsilon = 1/2."""
        H = Hypersurface(MultiPoly.coordinate(1, 0))
        form = upsilon(H, [0.0], 1.0)
        assert form.matrix[0, 0].real == pytest.approx(0.5)

    def test_single_zero_matches_mollified_laplacian(self):
        """The point-mass value agrees with the ball mean of d^2 log|z|_sigma / dz dzbar."""
        sigma = 1e-3

        def integrand(rho: float) -> float:
            return sigma**2 * rho / (rho**2 + sigma**2) ** 2

        value, _ = quad(integrand, 0.0, 1.0, points=[sigma], limit=200)
        H = Hypersurface(MultiPoly.coordinate(1, 0))
        assert upsilon(H, [0.0], 1.0).matrix[0, 0].real == pytest.approx(value, rel=1e-3)

    @pytest.mark.parametrize("r", [1.0, 2.0, 4.0])
    def test_hyperplane(self, hyperplane, r):
        """For W = {z2 = 0} through the center, Upsilon = diag(0, 1/r^2)."""
        estimate = estimate_upsilon(hyperplane, [0.0, 0.0], r, budget=3000, seed=11)
        m = estimate.form.matrix
        assert abs(m[0, 0]) <= 1e-12
        assert abs(m[0, 1]) <= 1e-12
        tolerance = 4 * estimate.std_error_at([0.0, 1.0]) + 0.02 / r**2
        assert abs(m[1, 1].real - 1.0 / r**2) <= tolerance

    def test_trace_gives_area(self, hyperplane):
        """The trace identity recovers the area pi r^2 of the disc."""
        estimate = estimate_upsilon(hyperplane, [0.0, 0.0], 1.0, budget=3000, seed=5)
        assert abs(estimate.area - math.pi) <= 3 * estimate.area_std_error() + 1e-12

    @pytest.mark.parametrize("surface, center", SURFACES_AND_CENTERS)
    def test_trace_matches_sampled_area(self, request, surface, center):
        """trace(Upsilon) vol / (pi/2) from slicing matches the sampled surface area."""
        H = request.getfixturevalue(surface)
        slicing = estimate_upsilon(H, center, 1.0, "slicing", budget=6000, seed=8)
        samples = sample_surface_in_ball(H, center, 1.0, budget=6000, seed=9)
        sigma = math.hypot(slicing.area_std_error(), samples.std_error())
        assert abs(slicing.area - samples.total_area()) <= 3 * sigma

    @pytest.mark.parametrize("surface, center", SURFACES_AND_CENTERS)
    def test_surface_and_slicing_agree(self, request, surface, center):
        """Both estimators give the same form on 20 random directions."""
        H = request.getfixturevalue(surface)
        surface_est = estimate_upsilon(H, center, 1.0, "surface", budget=6000, seed=2)
        slicing = estimate_upsilon(H, center, 1.0, "slicing", budget=6000, seed=3)
        assert slicing.method is UpsilonMethod.SLICING
        rng = np.random.default_rng(31)
        for v in rng.normal(size=(20, 2)) + 1j * rng.normal(size=(20, 2)):
            a = surface_est.form.pair(v)
            b = slicing.form.pair(v)
            sigma = math.hypot(surface_est.std_error_at(v), slicing.std_error_at(v))
            assert abs(a - b) <= 3 * sigma

    def test_slicing_in_the_plane_counts_zeros(self):
        """In C slicing is an exact zero count."""
        H = Hypersurface(MultiPoly.from_roots_in_variable(1, 0, [0.1, -0.2, 5.0]))
        assert upsilon(H, [0.0], 1.0, "slicing").matrix[0, 0].real == pytest.approx(1.0)

    def test_gauge_invariance(self, parabola):
        """Replacing T by c e^h T does not change Upsilon."""
        gauged = parabola.with_gauge(-2.0 + 1j, MultiPoly.coordinate(2, 1))
        a = upsilon(parabola, [0.1, 0.0], 1.0, budget=800, seed=3)
        b = upsilon(gauged, [0.1, 0.0], 1.0, budget=800, seed=3)
        np.testing.assert_allclose(a.matrix, b.matrix)

    def test_upsilon_is_positive_semidefinite(self, hyperbola):
        """Upsilon is a mean of positive rank-one forms."""
        form = upsilon(hyperbola, [1.0, 1.0], 1.0, budget=1000, seed=4)
        assert form.eigenvalues()[0] >= -1e-12

    def test_invalid_radius(self, hyperplane):
        """r <= 0 is rejected."""
        with pytest.raises(InvalidParameterError):
            upsilon(hyperplane, [0.0, 0.0], -1.0)

    def test_unknown_method(self, hyperplane):
        """Unknown estimator names are rejected."""
        with pytest.raises(ValueError):
            upsilon(hyperplane, [0.0, 0.0], 1.0, "quadrature")


class TestDensity:
    """Tests for the directional density."""

    def test_hyperplane_density_scales_as_inverse_square(self, hyperplane, euclidean2):
        """D(W, 0, r) = 1/r^2 for a complex line and the euclidean weight."""
        report = density_at(hyperplane, euclidean2, [0.0, 0.0], 2.0, budget=3000, seed=8)
        assert abs(report.density - 0.25) <= 4 * report.mc_std_error + 0.005
        assert abs(report.max_direction[1]) == pytest.approx(1.0)

    def test_density_in_the_plane(self):
        """One zero in the unit disc with phi = |z|^2 has density 1/2."""
        H = Hypersurface(MultiPoly.coordinate(1, 0))
        report = density_at(H, Weight.euclidean(1), [0.0], 1.0)
        assert report.density == pytest.approx(0.5)
        assert report.mc_std_error == 0.0

    def test_levi_scaling(self, hyperplane):
        """Doubling phi halves the density."""
        base = density_at(hyperplane, Weight.euclidean(2), [0.0, 0.0], 1.0, budget=800, seed=1)
        doubled = density_at(
            hyperplane, Weight.from_levi(2 * np.eye(2)), [0.0, 0.0], 1.0, budget=800, seed=1
        )
        assert doubled.density == pytest.approx(base.density / 2)

    def test_signed_excess(self, hyperplane, euclidean2):
        """Upsilon - I has top eigenvalue 0 at r = 1 and -3/4 at r = 2."""
        small = estimate_upsilon(hyperplane, [0.0, 0.0], 1.0, budget=3000, seed=6)
        slack = 4 * small.std_error_at([0.0, 1.0]) + 0.02
        assert abs(signed_excess(hyperplane, euclidean2, [0.0, 0.0], 1.0, 3000, 6)) <= slack
        report = density_at(hyperplane, euclidean2, [0.0, 0.0], 2.0, budget=3000, seed=6)
        assert report.signed_excess == pytest.approx(-0.75, abs=4 * report.mc_std_error + 0.01)


class TestDensityScan:
    """Tests for density scans over centers and radii."""

    def test_scan_is_independent_of_threads(self, parabola, euclidean2):
        """Per-cell seeds make the scan reproducible across thread counts."""
        centers = [[0.0, 0.0], [1.0, 1.0]]
        one = density_scan(parabola, euclidean2, centers, [1.0, 2.0], 400, seed=3, threads=1)
        many = density_scan(parabola, euclidean2, centers, [1.0, 2.0], 400, seed=3, threads=4)
        assert [c.density for c in one.cells] == [c.density for c in many.cells]
        assert len(one.cells) == 4

    def test_sup_and_inf_per_radius(self, hyperplane, euclidean2):
        """sup and inf over centers bracket every cell in their column."""
        report = density_scan(
            hyperplane, euclidean2, [[0.0, 0.0], [0.0, 0.5]], [1.0, 2.0, 4.0], 600, seed=2
        )
        for j in range(3):
            column = [report.cells[i * 3 + j].density for i in range(2)]
            assert report.sup_over_z[j] == max(column)
            assert report.inf_over_z[j] == min(column)
        assert report.trend.sup_shape is Monotonicity.DECREASING

    def test_radii_must_ascend(self, hyperplane, euclidean2):
        """Unsorted radii are rejected."""
        with pytest.raises(InvalidParameterError, match="ascending"):
            density_scan(hyperplane, euclidean2, [[0.0, 0.0]], [2.0, 1.0])

    def test_centers_required(self, hyperplane, euclidean2):
        """An empty center list is rejected."""
        with pytest.raises(InvalidParameterError):
            density_scan(hyperplane, euclidean2, [], [1.0])


class TestDensityTrend:
    """Tests for the finite-window trend summary."""

    def test_richardson_recovers_limit(self):
        """D(r) = D + c/r^2 extrapolates exactly."""
        radii = [1.0, 2.0, 4.0]
        values = [0.5 + 1.0 / r**2 for r in radii]
        trend = density_trend(radii, values, values)
        assert trend.sup_shape is Monotonicity.DECREASING
        assert trend.sup_extrapolated == pytest.approx(0.5)

    def test_shapes(self):
        """Constant and mixed sequences are labelled as such."""
        trend = density_trend([1.0, 2.0, 3.0], [1.0, 1.0, 1.0], [1.0, 2.0, 1.5])
        assert trend.sup_shape is Monotonicity.CONSTANT
        assert trend.inf_shape is Monotonicity.MIXED

    def test_single_radius_has_no_extrapolation(self):
        """One radius gives no Richardson estimate."""
        trend = density_trend([1.0], [0.3], [0.2])
        assert trend.sup_extrapolated is None
        assert trend.inf_shape is Monotonicity.CONSTANT
