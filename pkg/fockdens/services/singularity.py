"""Newton potential, the kernel Gamma_r and the singular weight s_r.

``s_r(z) = log|T(z)| - mean_{B(z,r)} log|T|`` is evaluated directly (log
route) and through the Riesz representation ``2 pi * int_{W cap B} Gamma_r dA``
(Newton route); the two must agree.
"""

from __future__ import annotations

import logging
import math

import numpy as np
import numpy.typing as npt

from fockdens.constants import (
    DEFAULT_BATCHES,
    INNER_DIRECTIONS,
    LAPLACIAN_MASS,
    ON_SURFACE_TOLERANCE,
    RADIAL_STRATA,
)
from fockdens.exceptions import InvalidParameterError, QuadratureError
from fockdens.models.algebra import ComplexArray, RealArray, as_points, as_vector
from fockdens.models.hypersurface import Hypersurface
from fockdens.models.reports import Route, SingularityValue
from fockdens.services.hypersurface import sample_surface_in_ball
from fockdens.services.weights import ball_volume, sample_ball, sphere_area

logger = logging.getLogger(__name__)

DIRECTIONS_PER_SAMPLE = 32
INNER_CHUNK = 4096


def newton_constant(n: int) -> float:
    """``c(n) = 1 / (pi^n 2^n (n - 1))``."""
    return 1.0 / (math.pi**n * 2**n * (n - 1))


def green_constant(n: int) -> float:
    """``kappa(n) = (n-2)! / (4 pi^n)``: ``-kappa |x|^{2-2n}`` solves ``Delta G = delta`` in R^{2n}."""
    return math.factorial(n - 2) / (4.0 * math.pi**n)


def calibration_factor(n: int) -> float:
    """``kappa(n) / c(n) = 2^{n-2} (n-1)!``, equal to 1 for ``n = 2``."""
    return green_constant(n) / newton_constant(n)


def _check_dimension(n: int) -> None:
    if n < 2:
        raise InvalidParameterError("n", n, "Newton potential undefined for n=1")


def _check_radius(r: float) -> None:
    if not r > 0:
        raise InvalidParameterError("r", r, "must be > 0")


def newton_potential(z: npt.ArrayLike, zeta: npt.ArrayLike) -> float:
    """``G(z, zeta) = -c(n) |z - zeta|^{2-2n}``; ``-inf`` when ``z = zeta``.

    Raises:
        InvalidParameterError: If ``n = 1``
    """
    a = as_vector(z)
    b = as_vector(zeta, a.shape[0])
    n = a.shape[0]
    _check_dimension(n)
    dist = float(np.linalg.norm(a - b))
    if dist == 0:
        return -math.inf
    return -newton_constant(n) * dist ** (2 - 2 * n)


def ball_potential(rho: float, r: float, n: int) -> float:
    """``int_{B(0,r)} -kappa |x - p|^{2-2n} dx`` for ``|p| = rho`` (shell theorem)."""
    m = 2 * n
    if rho <= r:
        return rho**2 / (2 * m) - r**2 / (2 * (m - 2))
    return -green_constant(n) * ball_volume(n, r) * rho ** (2 - m)


def _to_real(points: ComplexArray) -> RealArray:
    return np.concatenate([points.real, points.imag], axis=-1)


def _chord_squares(offsets: RealArray, directions: RealArray, r: float) -> RealArray:
    """``s2^2 - s1^2`` for the chord ``[s1, s2]`` of rays ``p + s u`` (``s >= 0``) in ``B(0, r)``."""
    b = offsets @ directions.T
    c0 = np.sum(offsets**2, axis=1, keepdims=True) - r**2
    disc = b**2 - c0
    root = np.sqrt(np.maximum(disc, 0.0))
    s2 = np.maximum(-b + root, 0.0)
    s1 = np.maximum(-b - root, 0.0)
    return np.asarray(np.where(disc > 0, s2**2 - s1**2, 0.0))


def _antithetic_directions(count: int, dim: int, rng: np.random.Generator) -> RealArray:
    half = max(1, count // 2)
    gaussian = rng.standard_normal((half, dim))
    unit = gaussian / np.linalg.norm(gaussian, axis=1, keepdims=True)
    return np.concatenate([unit, -unit])


def inner_green_mean(
    points: npt.ArrayLike,
    z: npt.ArrayLike,
    r: float,
    directions: int,
    rng: np.random.Generator,
) -> tuple[RealArray, RealArray]:
    """Mean of the true Green function ``-kappa|zeta - x|^{2-2n}`` over ``x in B(z, r)``.

    In polar coordinates around ``zeta`` the singularity cancels against
    the Jacobian: ``int_B G = -kappa |S| / 2 * E_u[s2^2 - s1^2]``. Directions
    are antithetic pairs. Returns per-point means and standard errors.

    Raises:
        QuadratureError: If an estimate is not finite or exceeds the bound
            ``kappa |S| (r + |zeta - z|)^2 / (2 V)``
    """
    center = as_vector(z)
    n = center.shape[0]
    pts = as_points(points, n)
    volume = ball_volume(n, r)
    scale = green_constant(n) * sphere_area(n) / (2.0 * volume)
    offsets = _to_real(pts - center)
    means = np.empty(pts.shape[0])
    errors = np.empty(pts.shape[0])
    chunk = max(1, INNER_CHUNK // max(1, directions))
    for start in range(0, pts.shape[0], chunk):
        block = offsets[start : start + chunk]
        u = _antithetic_directions(directions, 2 * n, rng)
        chords = _chord_squares(block, u, r)
        half = u.shape[0] // 2
        pairs = 0.5 * (chords[:, :half] + chords[:, half:])
        means[start : start + chunk] = -scale * pairs.mean(axis=1)
        if half > 1:
            errors[start : start + chunk] = scale * pairs.std(axis=1, ddof=1) / math.sqrt(half)
        else:
            errors[start : start + chunk] = 0.0

    cap = scale * (r + np.linalg.norm(offsets, axis=1)) ** 2
    bad = ~np.isfinite(means) | (-means > cap * (1 + 1e-12))
    if np.any(bad):
        k = int(np.argmax(bad))
        raise QuadratureError("inner Green mean", float(-means[k]), float(cap[k]))
    return means, errors


def gamma_r_estimate(
    z: npt.ArrayLike,
    zeta: npt.ArrayLike,
    r: float,
    budget: int = INNER_DIRECTIONS,
    seed: int = 0,
) -> tuple[float, float]:
    """``Gamma_r(z, zeta)`` with its Monte Carlo standard error.

    ``Gamma_r = G(z, zeta) - mean_{x in B(z, r)} G(zeta, x)`` with ``G`` the
    potential of :func:`newton_potential`.
    """
    _check_radius(r)
    a = as_vector(z)
    b = as_vector(zeta, a.shape[0])
    n = a.shape[0]
    _check_dimension(n)
    if np.array_equal(a, b):
        return -math.inf, 0.0
    rng = np.random.default_rng(seed)
    means, errors = inner_green_mean(b.reshape(1, -1), a, r, budget, rng)
    factor = 1.0 / calibration_factor(n)
    return newton_potential(a, b) - factor * float(means[0]), factor * float(errors[0])


def gamma_r(
    z: npt.ArrayLike,
    zeta: npt.ArrayLike,
    r: float,
    budget: int = INNER_DIRECTIONS,
    seed: int = 0,
) -> float:
    """Kernel ``Gamma_r(z, zeta)``, supported on ``|z - zeta| <= r``."""
    return gamma_r_estimate(z, zeta, r, budget, seed)[0]


def _on_surface(H: Hypersurface, z: npt.ArrayLike) -> bool:
    return bool(abs(complex(H.T(z)[0])) <= ON_SURFACE_TOLERANCE)


def s_r_newton(
    H: Hypersurface,
    z: npt.ArrayLike,
    r: float,
    budget: int = 2000,
    seed: int = 0,
) -> SingularityValue:
    """``s_r(z) = 2 pi int_{W cap B(z,r)} Gamma_r(z, zeta) dA(zeta)``.

    Surface samples concentrate near ``z`` (focus) to tame ``|zeta - z|^{2-2n}``;
    the inner ball mean uses ray chords. ``Gamma_r`` is taken with the true
    Green constant, i.e. ``calibration_factor(n)`` times the ``c(n)`` kernel.

    Raises:
        InvalidParameterError: If ``n = 1`` or ``r <= 0``
        QuadratureError: If the inner mean fails its analytic guard
    """
    center = as_vector(z, H.n)
    _check_dimension(H.n)
    _check_radius(r)
    if _on_surface(H, center):
        return SingularityValue(
            point=center.tolist(), radius=r, value=-math.inf, route=Route.NEWTON, quadrature_error=0.0
        )
    samples = sample_surface_in_ball(H, center, r, budget, seed, focus=center)
    if samples.is_empty:
        return SingularityValue(
            point=center.tolist(), radius=r, value=0.0, route=Route.NEWTON, quadrature_error=0.0
        )
    rng = np.random.default_rng([seed, 1])
    inner, _ = inner_green_mean(samples.points, center, r, DIRECTIONS_PER_SAMPLE, rng)
    dist = np.linalg.norm(samples.points - center, axis=1)
    kappa = green_constant(H.n)
    direct = -kappa * dist ** (2 - 2 * H.n)
    integrand = LAPLACIAN_MASS * (direct - inner)
    value = float(np.sum(samples.weights * integrand))
    error = samples.std_error(integrand)
    logger.debug("s_r newton at %s: %.6f +- %.2e (%d samples)", center.tolist(), value, error, len(samples))
    return SingularityValue(
        point=center.tolist(), radius=r, value=value, route=Route.NEWTON, quadrature_error=error
    )


def s_r_logT(
    H: Hypersurface,
    z: npt.ArrayLike,
    r: float,
    budget: int = 2000,
    seed: int = 0,
) -> SingularityValue:
    """``s_r(z) = log|T(z)| - mean_{B(z,r)} log|T|``, valid in every dimension.

    The ball mean uses stratified radial shells; the error comes from the
    spread of independent batch means. The integrable log singularity is
    left as is.

    Raises:
        InvalidParameterError: If ``r <= 0``
    """
    center = as_vector(z, H.n)
    _check_radius(r)
    if _on_surface(H, center):
        return SingularityValue(
            point=center.tolist(), radius=r, value=-math.inf, route=Route.LOGT, quadrature_error=0.0
        )
    rng = np.random.default_rng(seed)
    batches = DEFAULT_BATCHES
    per_batch = max(RADIAL_STRATA, (budget // (batches * RADIAL_STRATA)) * RADIAL_STRATA)
    means = np.empty(batches)
    for b in range(batches):
        pts = sample_ball(center, r, per_batch, rng, strata=RADIAL_STRATA)
        logs = H.log_abs(pts)
        # a sample exactly on W has probability zero
        means[b] = float(np.mean(logs[np.isfinite(logs)]))
    value = float(H.log_abs(center)[0]) - float(np.mean(means))
    error = float(np.std(means, ddof=1) / math.sqrt(batches))
    return SingularityValue(
        point=center.tolist(), radius=r, value=value, route=Route.LOGT, quadrature_error=error
    )
