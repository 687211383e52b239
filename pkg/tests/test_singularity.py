"""Tests for the Newton kernel and the singular weight s_r."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from fockdens.exceptions import InvalidParameterError
from fockdens.models import Hypersurface, MultiPoly
from fockdens.models.reports import Route
from fockdens.services.singularity import (
    ball_potential,
    calibration_factor,
    gamma_r,
    gamma_r_estimate,
    green_constant,
    inner_green_mean,
    newton_constant,
    newton_potential,
    s_r_logT,
    s_r_newton,
)
from fockdens.services.weights import ball_volume


def _hyperplane_s_r(d: float) -> float:
    """Closed form of s_1 at (0, d) for W = {z2 = 0}.

    The z2-marginal of the unit ball in C^2 has radial density 4 rho (1 - rho^2)
    and the circle mean of log|d + rho e^{it}| is log max(d, rho).
    """
    if d >= 1.0:
        return 0.0
    inner = math.log(d) * (2 * d**2 - d**4)
    outer, _ = quad(lambda rho: math.log(rho) * 4 * rho * (1 - rho**2), d, 1.0)
    return math.log(d) - inner - outer


class TestConstants:
    """Tests for the kernel normalizations."""

    def test_newton_constant(self):
        """c(2) = 1 / (4 pi^2)."""
        assert newton_constant(2) == pytest.approx(1 / (4 * math.pi**2))

    @pytest.mark.parametrize(("n", "expected"), [(2, 1.0), (3, 4.0), (4, 24.0)])
    def test_calibration_factor(self, n, expected):
        """kappa(n) / c(n) = 2^(n-2) (n-1)!."""
        assert calibration_factor(n) == pytest.approx(expected)

    def test_green_constant_matches_newton_in_c2(self):
        """The two normalizations coincide in C^2."""
        assert green_constant(2) == pytest.approx(newton_constant(2))


class TestNewtonPotential:
    """Tests for G(z, zeta)."""

    def test_value(self):
        """G = -c(n) |z - zeta|^(2-2n)."""
        value = newton_potential([1.0, 0.0], [0.0, 1j])
        assert value == pytest.approx(-newton_constant(2) / 2.0)

    def test_diagonal_is_minus_infinity(self):
        """G(z, z) = -inf."""
        assert newton_potential([1.0, 2.0], [1.0, 2.0]) == -math.inf

    def test_undefined_in_the_plane(self):
        """n = 1 has a logarithmic kernel instead."""
        with pytest.raises(InvalidParameterError, match="n=1"):
            newton_potential([1.0], [0.0])


class TestBallPotential:
    """Tests for ball integrals of the Green function."""

    @pytest.mark.parametrize("n", [2, 3])
    def test_continuous_at_the_sphere(self, n):
        """Inside and outside formulas agree at rho = r."""
        r = 1.3
        inside = ball_potential(r * (1 - 1e-12), r, n)
        outside = ball_potential(r * (1 + 1e-12), r, n)
        assert inside == pytest.approx(outside, rel=1e-9)

    @pytest.mark.parametrize(("n", "rho"), [(2, 0.0), (2, 0.4), (2, 1.7), (3, 0.8)])
    def test_inner_mean_matches_shell_theorem(self, n, rho):
        """Ray-chord quadrature reproduces the closed-form ball integral."""
        zeta = np.zeros(n, dtype=complex)
        zeta[0] = rho
        means, errors = inner_green_mean(
            zeta.reshape(1, -1), np.zeros(n), 1.0, 4096, np.random.default_rng(0)
        )
        exact = ball_potential(rho, 1.0, n) / ball_volume(n, 1.0)
        assert abs(means[0] - exact) <= 4 * errors[0] + 1e-9 * abs(exact)


class TestGammaR:
    """Tests for the kernel Gamma_r."""

    def test_diagonal(self):
        """Gamma_r(z, z) = -inf."""
        assert gamma_r([0.0, 0.0], [0.0, 0.0], 1.0) == -math.inf

    def test_vanishes_outside_the_ball(self):
        """Mean-value property makes Gamma_r zero when |z - zeta| > r."""
        value, error = gamma_r_estimate([0.0, 0.0], [1.5, 0.0], 1.0, seed=3)
        assert abs(value) <= 4 * error + 1e-12

    def test_negative_inside_the_ball(self):
        """G is subharmonic, so its ball mean dominates its center value."""
        assert gamma_r([0.0, 0.0], [0.0, 0.5j], 1.0, seed=1) < 0

    def test_radius_must_be_positive(self):
        """r <= 0 is rejected."""
        with pytest.raises(InvalidParameterError):
            gamma_r([0.0, 0.0], [1.0, 0.0], 0.0)


class TestSingularWeight:
    """Tests for s_r by both routes."""

    @pytest.mark.parametrize("d", [0.2, 0.5, 0.9])
    def test_log_route_matches_closed_form(self, hyperplane, d):
        """s_1 at distance d from a complex line."""
        result = s_r_logT(hyperplane, [0.0, d], 1.0, budget=16_384, seed=2)
        assert result.route is Route.LOGT
        assert abs(result.value - _hyperplane_s_r(d)) <= 4 * result.quadrature_error + 2e-3

    def test_log_route_far_from_w(self, hyperplane):
        """log|T| is harmonic on balls missing W, so s_r is zero there."""
        result = s_r_logT(hyperplane, [0.0, 2.0], 1.0, budget=8192, seed=5)
        assert abs(result.value) <= 4 * result.quadrature_error + 1e-3

    @pytest.mark.parametrize("d", [0.3, 0.7])
    def test_routes_agree(self, hyperplane, d):
        """The Riesz representation reproduces the direct ball mean."""
        newton = s_r_newton(hyperplane, [0.0, d], 1.0, budget=4000, seed=1)
        log_route = s_r_logT(hyperplane, [0.0, d], 1.0, budget=16_384, seed=1)
        slack = 4 * (newton.quadrature_error + log_route.quadrature_error) + 0.02
        assert abs(newton.value - log_route.value) <= slack

    def test_on_surface_is_minus_infinity(self, parabola):
        """s_r = -inf on W by both routes."""
        assert s_r_logT(parabola, [1.0, 1.0], 1.0).on_surface
        assert s_r_newton(parabola, [1.0, 1.0], 1.0).value == -math.inf

    def test_newton_without_surface_points(self, hyperplane):
        """No part of W in the ball means s_r = 0 exactly."""
        result = s_r_newton(hyperplane, [0.0, 5.0], 1.0, budget=400, seed=0)
        assert result.value == 0.0
        assert result.route is Route.NEWTON

    def test_newton_rejects_the_plane(self):
        """The Newton route needs n >= 2."""
        H = Hypersurface(MultiPoly.coordinate(1, 0))
        with pytest.raises(InvalidParameterError):
            s_r_newton(H, [0.5], 1.0)

    def test_log_route_in_the_plane(self):
        """In C the disc mean of log|z| around 1/2 integrates log max(1/2, rho) against 2 rho."""
        H = Hypersurface(MultiPoly.coordinate(1, 0))
        inner = math.log(0.5) * 0.25
        outer, _ = quad(lambda rho: math.log(rho) * 2 * rho, 0.5, 1.0)
        expected = math.log(0.5) - inner - outer
        result = s_r_logT(H, [0.5], 1.0, budget=16_384, seed=4)
        assert abs(result.value - expected) <= 4 * result.quadrature_error + 2e-3
