"""Levi forms, ball averages and comparability constants of quadratic weights."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from fockdens.exceptions import InvalidParameterError
from fockdens.models.algebra import ComplexArray, HermitianForm, as_vector
from fockdens.models.reports import ComparabilityReport
from fockdens.models.weight import Weight

logger = logging.getLogger(__name__)


def ball_volume(n: int, r: float) -> float:
    """Lebesgue volume ``pi^n r^{2n} / n!`` of a ball of radius ``r`` in ``C^n``."""
    return math.pi**n * r ** (2 * n) / math.factorial(n)


def sphere_area(n: int) -> float:
    """Area ``2 pi^n / (n-1)!`` of the unit sphere ``S^{2n-1}``."""
    return 2.0 * math.pi**n / math.factorial(n - 1)


def _check_radius(r: float, name: str = "r") -> None:
    if not r > 0:
        raise InvalidParameterError(name, r, "must be > 0")


def sample_ball(
    center: npt.ArrayLike,
    r: float,
    count: int,
    rng: np.random.Generator,
    strata: int = 1,
) -> ComplexArray:
    """Uniform points of the Lebesgue ball ``B(center, r)`` in ``C^n``.

    With ``strata > 1`` the volume fraction ``(|x|/r)^{2n}`` is stratified into
    equal shells and ``count`` must be a multiple of ``strata``.
    """
    c = np.asarray(center, dtype=np.complex128).reshape(-1)
    n = c.shape[0]
    gaussian = rng.standard_normal((count, 2 * n))
    directions = gaussian / np.linalg.norm(gaussian, axis=1, keepdims=True)
    uniform = rng.random(count)
    if strata > 1:
        shell = np.repeat(np.arange(strata), count // strata)
        uniform = (shell + uniform) / strata
    radii = r * uniform ** (1.0 / (2 * n))
    real = directions * radii[:, None]
    return c + real[:, :n] + 1j * real[:, n:]


def levi_form(w: Weight, z: npt.ArrayLike) -> HermitianForm:
    """Matrix of ``d^2 phi / dz_i dzbar_j`` at ``z``; constant for quadratic weights."""
    as_vector(z, w.n)
    return w.levi


def mollified_levi_form(w: Weight, z: npt.ArrayLike, r: float) -> HermitianForm:
    """Levi form of the ball average ``phi_r`` at ``z``.

    Averaging commutes with ``ddbar``, so for the quadratic family it equals ``Q``.
    """
    _check_radius(r)
    return levi_form(w, z)


def ball_average_phi(w: Weight, z: npt.ArrayLike, r: float) -> float:
    """Lebesgue mean of ``phi`` over ``B(z, r)``.

    Closed form ``phi(z) + trace(Q) r^2 / (n + 1)``: each complex coordinate
    has mean square ``r^2/(n+1)`` over the ball and ``2 Re h`` is harmonic.

    Raises:
        InvalidParameterError: If ``r <= 0``
    """
    _check_radius(r)
    point = as_vector(z, w.n)
    return float(w.value(point)[0]) + w.levi.trace() * r**2 / (w.n + 1)


def ball_average_phi_monte_carlo(
    w: Weight, z: npt.ArrayLike, r: float, samples: int, seed: int
) -> tuple[float, float]:
    """Monte Carlo mean of ``phi`` over ``B(z, r)`` with its standard error."""
    _check_radius(r)
    point = as_vector(z, w.n)
    rng = np.random.default_rng(seed)
    values = w.value(sample_ball(point, r, samples, rng))
    return float(np.mean(values)), float(np.std(values, ddof=1) / math.sqrt(samples))


def comparability_bounds(
    w: Weight, region: Sequence[npt.ArrayLike]
) -> ComparabilityReport:
    """Extreme Levi eigenvalues over sampled region points.

    Raises:
        InvalidParameterError: If ``region`` is empty
    """
    if len(region) == 0:
        raise InvalidParameterError("region", [], "at least one point required")
    lows: list[float] = []
    highs: list[float] = []
    for z in region:
        eig = levi_form(w, z).eigenvalues()
        lows.append(float(eig[0]))
        highs.append(float(eig[-1]))
    report = ComparabilityReport(
        c_lower=min(lows), c_upper=max(highs), sample_count=len(region)
    )
    logger.debug("comparability over %d points: %s", len(region), report)
    return report
