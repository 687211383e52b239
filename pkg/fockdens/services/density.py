"""Ball averages of the current of integration of W and the directional density."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
import numpy.typing as npt

from fockdens.constants import DEFAULT_BATCHES, LELONG_FACTOR
from fockdens.exceptions import InvalidParameterError
from fockdens.models.algebra import ComplexArray, HermitianForm, as_vector
from fockdens.models.hypersurface import Hypersurface
from fockdens.models.reports import DensityReport, DensityTrend, Monotonicity, ScanReport
from fockdens.models.weight import Weight
from fockdens.services.algebra import max_gen_eig, random_unitary
from fockdens.services.hypersurface import (
    cross_section_points,
    line_counts_in_ball,
    sample_surface_in_ball,
)
from fockdens.services.parallel import map_cells
from fockdens.services.weights import ball_volume, mollified_levi_form

logger = logging.getLogger(__name__)


class UpsilonMethod(str, Enum):
    """Estimator of the ball-averaged current."""

    SURFACE = "surface"
    SLICING = "slicing"


@dataclass(frozen=True, eq=False)
class UpsilonEstimate:
    """Estimate of ``Upsilon_W(z, r)`` with independent per-batch replicas.

    ``batch_forms`` has shape ``(B, n, n)``; each replica is unbiased and the
    estimate is their mean.
    """

    form: HermitianForm
    batch_forms: ComplexArray
    method: UpsilonMethod
    volume: float

    @property
    def area(self) -> float:
        """Area of ``W`` in the ball implied by the trace identity."""
        return self.form.trace() * self.volume / LELONG_FACTOR

    def std_error_at(self, v: npt.ArrayLike) -> float:
        """Standard error of ``Upsilon(v, v)``."""
        count = self.batch_forms.shape[0]
        if count < 2:
            return 0.0
        vec = as_vector(v, self.form.n)
        values = np.einsum("i,bij,j->b", vec, self.batch_forms, vec.conj()).real
        return float(np.std(values, ddof=1) / math.sqrt(count))

    def area_std_error(self) -> float:
        count = self.batch_forms.shape[0]
        if count < 2:
            return 0.0
        traces = np.trace(self.batch_forms, axis1=1, axis2=2).real
        return float(np.std(traces, ddof=1) / math.sqrt(count)) * self.volume / LELONG_FACTOR


def _check_radius(r: float) -> None:
    if not r > 0:
        raise InvalidParameterError("r", r, "must be > 0")


def _surface_estimate(
    H: Hypersurface, z: npt.ArrayLike, r: float, budget: int, seed: int
) -> UpsilonEstimate:
    samples = sample_surface_in_ball(H, z, r, budget, seed)
    volume = ball_volume(H.n, r)
    n = H.n
    batch_forms = np.zeros((samples.batch_count, n, n), dtype=np.complex128)
    if not samples.is_empty:
        # grad T / |grad T| is the conjugate of the stored unit normal
        g = samples.normals.conj()
        outer = np.einsum("k,ki,kj->kij", samples.weights, g, g.conj())
        np.add.at(batch_forms, samples.batches, outer)
        batch_forms *= samples.batch_count * LELONG_FACTOR / volume
    mean = batch_forms.mean(axis=0) if samples.batch_count else np.zeros((n, n))
    return UpsilonEstimate(HermitianForm(mean), batch_forms, UpsilonMethod.SURFACE, volume)


def _polarization_directions(n: int) -> list[tuple[int, int, int]]:
    """Frame index triples ``(j, k, m)``: ``k = -1`` for ``e_j``, else ``(e_j + i^m e_k)/sqrt2``."""
    triples = [(j, -1, 0) for j in range(n)]
    for j in range(n):
        for k in range(j + 1, n):
            triples.extend((j, k, m) for m in range(4))
    return triples


def _slicing_estimate(
    H: Hypersurface,
    z: npt.ArrayLike,
    r: float,
    budget: int,
    seed: int,
    batches: int = DEFAULT_BATCHES,
) -> UpsilonEstimate:
    center = as_vector(z, H.n)
    n = H.n
    volume = ball_volume(n, r)
    if n == 1:
        count = line_counts_in_ball(H, np.zeros((1, 1)), np.ones(1), center, r)[0]
        value = LELONG_FACTOR * count / volume
        forms = np.full((1, 1, 1), value, dtype=np.complex128)
        return UpsilonEstimate(HermitianForm(forms[0]), forms, UpsilonMethod.SLICING, volume)

    rng = np.random.default_rng(seed)
    triples = _polarization_directions(n)
    batch_count = max(1, min(batches, budget // len(triples)))
    lines = max(1, budget // (batch_count * len(triples)))
    cross_area = ball_volume(n - 1, r)
    batch_forms = np.zeros((batch_count, n, n), dtype=np.complex128)
    for b in range(batch_count):
        frame = random_unitary(n, rng)
        pairing: dict[tuple[int, int, int], float] = {}
        for j, k, m in triples:
            if k < 0:
                v = frame[:, j]
            else:
                v = (frame[:, j] + (1j**m) * frame[:, k]) / math.sqrt(2.0)
            bases = cross_section_points(center, v, r, lines, rng)
            counts = line_counts_in_ball(H, bases, v, center, r)
            pairing[(j, k, m)] = LELONG_FACTOR * cross_area * float(np.mean(counts)) / volume
        gram = np.zeros((n, n), dtype=np.complex128)
        for j in range(n):
            gram[j, j] = pairing[(j, -1, 0)]
            for k in range(j + 1, n):
                # H(x, y) = 1/4 sum_m i^m H(x + i^m y); unit directions carry |x + i^m y|^2 = 2
                value = 0.25 * sum((1j**m) * 2.0 * pairing[(j, k, m)] for m in range(4))
                gram[j, k] = value
                gram[k, j] = np.conj(value)
        batch_forms[b] = frame.conj() @ gram @ frame.T
    logger.debug(
        "slicing estimate: %d batches x %d directions x %d lines", batch_count, len(triples), lines
    )
    return UpsilonEstimate(
        HermitianForm(batch_forms.mean(axis=0)), batch_forms, UpsilonMethod.SLICING, volume
    )


def estimate_upsilon(
    H: Hypersurface,
    z: npt.ArrayLike,
    r: float,
    method: UpsilonMethod | str = UpsilonMethod.SURFACE,
    budget: int = 2000,
    seed: int = 0,
) -> UpsilonEstimate:
    """Estimate ``Upsilon_W(z, r)`` together with its batch replicas.

    ``surface``: ``(pi/2)/vol * sum w (grad T/|grad T|)(grad T/|grad T|)^*``
    over weighted surface samples. ``slicing``: per frame direction, the
    mean intersection count of parallel lines times the cross-section area,
    with off-diagonal entries recovered by polarization.

    Raises:
        InvalidParameterError: If ``r <= 0``
        LineInSurfaceError: If a slicing line lies in ``W``
    """
    _check_radius(r)
    as_vector(z, H.n)
    chosen = UpsilonMethod(method)
    if chosen is UpsilonMethod.SURFACE:
        return _surface_estimate(H, z, r, budget, seed)
    return _slicing_estimate(H, z, r, budget, seed)


def upsilon(
    H: Hypersurface,
    z: npt.ArrayLike,
    r: float,
    method: UpsilonMethod | str = UpsilonMethod.SURFACE,
    budget: int = 2000,
    seed: int = 0,
) -> HermitianForm:
    """Ball average ``Upsilon_W(z, r)`` of the current of integration of ``W``."""
    return estimate_upsilon(H, z, r, method, budget, seed).form


def density_at(
    H: Hypersurface,
    w: Weight,
    z: npt.ArrayLike,
    r: float,
    budget: int = 2000,
    seed: int = 0,
) -> DensityReport:
    """Directional density ``D(W, z, r)``: top eigenvalue of ``(Upsilon, i ddbar phi_r)``.

    Raises:
        IndefiniteDenominatorError: If the mollified Levi form is degenerate
    """
    center = as_vector(z, H.n)
    estimate = estimate_upsilon(H, center, r, UpsilonMethod.SURFACE, budget, seed)
    levi_r = mollified_levi_form(w, center, r)
    value, direction = max_gen_eig(estimate.form, levi_r)
    std = estimate.std_error_at(direction) / levi_r.pair(direction)
    excess = float((estimate.form - levi_r).eigenvalues()[-1])
    return DensityReport(
        center=center.tolist(),
        radius=r,
        upsilon=estimate.form,
        levi_r=levi_r,
        density=max(value, 0.0),
        max_direction=direction.tolist(),
        mc_std_error=std,
        area=estimate.area,
        signed_excess=excess,
    )


def signed_excess(
    H: Hypersurface,
    w: Weight,
    z: npt.ArrayLike,
    r: float,
    budget: int = 2000,
    seed: int = 0,
) -> float:
    """Largest eigenvalue of ``Upsilon_W(z, r) - i ddbar phi_r(z)``."""
    estimate = estimate_upsilon(H, z, r, UpsilonMethod.SURFACE, budget, seed)
    return float((estimate.form - mollified_levi_form(w, z, r)).eigenvalues()[-1])


def _shape(values: Sequence[float]) -> Monotonicity:
    diffs = np.diff(np.asarray(values, dtype=np.float64))
    if diffs.size == 0 or np.all(diffs == 0):
        return Monotonicity.CONSTANT
    if np.all(diffs < 0):
        return Monotonicity.DECREASING
    if np.all(diffs > 0):
        return Monotonicity.INCREASING
    return Monotonicity.MIXED


def _richardson(radii: Sequence[float], values: Sequence[float]) -> float | None:
    """Extrapolate ``D(r) = D_inf + c r^-2`` from the two largest radii."""
    if len(radii) < 2:
        return None
    r1, r2 = radii[-2], radii[-1]
    d1, d2 = values[-2], values[-1]
    return float((r2**2 * d2 - r1**2 * d1) / (r2**2 - r1**2))


def density_trend(
    radii: Sequence[float], sup_over_z: Sequence[float], inf_over_z: Sequence[float]
) -> DensityTrend:
    """Finite-window summary of per-radius density extremes."""
    return DensityTrend(
        sup_shape=_shape(sup_over_z),
        inf_shape=_shape(inf_over_z),
        sup_extrapolated=_richardson(radii, sup_over_z),
        inf_extrapolated=_richardson(radii, inf_over_z),
    )


def density_scan(
    H: Hypersurface,
    w: Weight,
    centers: Sequence[npt.ArrayLike],
    radii: Sequence[float],
    budget: int = 2000,
    seed: int = 0,
    threads: int | None = None,
) -> ScanReport:
    """Densities on the ``centers x radii`` grid with sup/inf over centers per radius.

    Cell ``(i, j)`` uses a seed derived from ``seed`` and ``(i, j)``, so the
    report does not depend on the thread count.

    Raises:
        InvalidParameterError: If ``centers`` is empty or ``radii`` is not ascending
    """
    if len(centers) == 0:
        raise InvalidParameterError("centers", [], "at least one center required")
    if len(radii) == 0 or any(b <= a for a, b in zip(radii, radii[1:], strict=False)):
        raise InvalidParameterError("radii", list(radii), "must be non-empty and ascending")
    for r in radii:
        _check_radius(r)
    points = [as_vector(c, H.n) for c in centers]
    keys = [(i, j) for i in range(len(points)) for j in range(len(radii))]

    def evaluate(key: tuple[int, ...], cell_seed: int) -> DensityReport:
        i, j = key
        return density_at(H, w, points[i], radii[j], budget, cell_seed)

    cells = map_cells(evaluate, keys, seed, threads)
    sups = []
    infs = []
    for j in range(len(radii)):
        column = [cells[i * len(radii) + j].density for i in range(len(points))]
        sups.append(max(column))
        infs.append(min(column))
    trend = density_trend(radii, sups, infs)
    logger.info("density scan: sup %s, inf %s (%s)", trend.sup_shape, trend.inf_shape, trend.note)
    return ScanReport(
        radii=list(radii),
        cells=cells,
        sup_over_z=sups,
        inf_over_z=infs,
        trend=trend,
    )
