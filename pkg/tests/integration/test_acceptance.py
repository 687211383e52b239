"""End-to-end numerical sweeps on the reference hypersurfaces.

These runs take minutes; deselect them with ``-m "not slow"``.
"""

import math

import numpy as np
import pytest

from fockdens.models import Hypersurface, MultiPoly, Weight
from fockdens.models.reports import Monotonicity
from fockdens.services.density import density_scan
from fockdens.services.focknum import (
    build_basis,
    min_norm_extension,
    sampling_ratio_bounds,
    surface_values,
)
from fockdens.services.hypersurface import distance_estimate
from fockdens.services.sequences import lattice
from fockdens.services.singularity import s_r_logT, s_r_newton

pytestmark = [pytest.mark.slow, pytest.mark.integration]


def _points_off_surface(H: Hypersurface, count: int, seed: int, low: float, high: float):
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < count:
        z = rng.uniform(-1.5, 1.5, 2) + 1j * rng.uniform(-1.5, 1.5, 2)
        if low <= distance_estimate(H, z) <= high:
            points.append(z)
    return points


class TestSingularWeightRoutes:
    """The Newton and log routes compute the same s_r."""

    @pytest.mark.parametrize("surface", ["hyperplane", "parabola", "hyperbola"])
    def test_routes_agree(self, request, surface):
        """Within 3 combined standard errors at 47 of 50 points."""
        H = request.getfixturevalue(surface)
        points = _points_off_surface(H, 50, seed=H.T.degree, low=0.05, high=3.0)
        agree = 0
        for k, z in enumerate(points):
            newton = s_r_newton(H, z, 1.0, budget=4000, seed=k)
            log_route = s_r_logT(H, z, 1.0, budget=16_384, seed=k)
            sigma = math.hypot(newton.quadrature_error, log_route.quadrature_error)
            agree += abs(newton.value - log_route.value) <= 3 * sigma
        assert agree >= 47


class TestSingularWeightProperties:
    """Sign, boundedness and the log singularity of s_r."""

    @pytest.mark.parametrize("surface", ["hyperplane", "parabola", "hyperbola"])
    def test_non_positive(self, request, surface):
        """s_r <= 3 sigma at 200 random points."""
        H = request.getfixturevalue(surface)
        for k, z in enumerate(_points_off_surface(H, 200, seed=5, low=0.01, high=5.0)):
            value = s_r_logT(H, z, 1.0, budget=4000, seed=k)
            assert value.value <= 3 * value.quadrature_error + 1e-9

    def test_bounded_off_surface(self, hyperbola):
        """The minimum over points at distance >= 0.25 is finite and seed-stable."""
        points = _points_off_surface(hyperbola, 20, seed=2, low=0.25, high=3.0)
        minima = []
        for seed in (0, 1):
            values = [s_r_logT(hyperbola, z, 1.0, budget=8000, seed=seed).value for z in points]
            minima.append(min(values))
        assert all(math.isfinite(m) for m in minima)
        assert minima[0] == pytest.approx(minima[1], rel=0.2)

    def test_log_singularity(self, hyperplane):
        """s_r - log(delta) stays in a window of width 1 as delta -> 0."""
        residuals = []
        for k in range(4, 11):
            delta = 2.0**-k
            value = s_r_logT(hyperplane, [0.0, delta], 1.0, budget=8000, seed=k).value
            residuals.append(value - math.log(delta))
        assert max(residuals) - min(residuals) <= 1.0


class TestHyperplaneDensity:
    """The density of a hyperplane decays like r^-2."""

    def test_decay(self, hyperplane, euclidean2):
        """density(8) / density(4) is close to 1/4 and both extremes decrease."""
        report = density_scan(
            hyperplane,
            euclidean2,
            [[0.0, 0.0], [2.0, 0.0], [0.0 + 1j, 0.0]],
            [1.0, 2.0, 4.0, 8.0],
            budget=3000,
            seed=17,
            threads=2,
        )
        assert report.trend.sup_shape is Monotonicity.DECREASING
        assert report.trend.inf_shape is Monotonicity.DECREASING
        ratio = report.sup_over_z[3] / report.sup_over_z[2]
        assert 0.15 <= ratio <= 0.40


class TestLatticeSamplingRatio:
    """Denser lattices sample the truncated space better."""

    def test_lower_bound_decreases_with_spacing(self):
        """m strictly decreases in alpha and drops at least tenfold; M stays finite."""
        w = Weight.euclidean(1)
        reports = [
            sampling_ratio_bounds(lattice(alpha, 6.0), w, 6.0, 24)
            for alpha in (0.5, 0.8, 1.2, 1.8)
        ]
        lower = [r.lower for r in reports]
        assert lower[0] > lower[1] > lower[2] > lower[3]
        assert lower[0] >= 10 * lower[3]
        assert all(math.isfinite(r.upper) and r.upper > 0 for r in reports)

    def test_upper_bound_stable_in_degree(self):
        """M moves by at most 20% when the degree grows by 8."""
        w = Weight.euclidean(1)
        seq = lattice(0.5, 6.0)
        low = sampling_ratio_bounds(seq, w, 6.0, 24, leak_tolerance=1e-4)
        high = sampling_ratio_bounds(seq, w, 6.0, 32, leak_tolerance=1e-4)
        assert high.upper == pytest.approx(low.upper, rel=0.2)


class TestExtensionRecovery:
    """Extension from z2 = 0 recovers monomials in z1."""

    @pytest.mark.parametrize("k", [4, 5, 6])
    def test_recovers_high_monomials(self, hyperplane, euclidean2, k):
        """All coefficient mass sits on z1^k."""
        f = MultiPoly(2, (((k, 0), 1.0),))
        data = surface_values(hyperplane, f, 4.0, budget=3000, seed=k)
        report = min_norm_extension(hyperplane, data, euclidean2, 6)
        basis = build_basis(euclidean2, 2, 6)
        norm = math.exp(0.5 * basis.log_norms2[basis.index_of((k, 0))])
        cross = sum(abs(c) ** 2 for a, c in report.coefficients if a != (k, 0))
        assert cross <= 1e-6 * norm**2
        assert abs(report.coefficient((k, 0))) == pytest.approx(norm, rel=1e-6)

    @pytest.mark.parametrize("k", [1, 3, 5])
    def test_ratio_continuous_under_bending(self, euclidean2, k):
        """Bending z2 = 0 into z2 = 0.1 z1^2 moves the extension ratio by at most 2x."""
        f = MultiPoly(2, (((k, 0), 1.0),))
        ratios = []
        for eps in (0.0, 0.1):
            H = Hypersurface(MultiPoly(2, (((0, 1), 1.0), ((2, 0), -eps))))
            data = surface_values(H, f, 4.0, budget=3000, seed=k)
            ratios.append(min_norm_extension(H, data, euclidean2, 6).ratio)
        assert 0.5 <= ratios[1] / ratios[0] <= 2.0
