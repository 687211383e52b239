"""Geometry of ``W = T^{-1}(0)``: distance, surface sampling, slicing and flatness."""

from __future__ import annotations

import logging
import math

import numpy as np
import numpy.typing as npt

from fockdens.constants import (
    BOUNDARY_BAND,
    DEFAULT_BATCHES,
    FLATNESS_MIN_BUDGET,
    FOOT_POINT_MAX_ITERATIONS,
    FOOT_POINT_TOLERANCE,
    ON_SURFACE_TOLERANCE,
    SEARCH_RADIUS_FACTOR,
    SURFACE_RESIDUAL_TOLERANCE,
)
from fockdens.exceptions import (
    EmptyRegionError,
    InvalidParameterError,
    LineInSurfaceError,
    SingularGradientError,
    ZeroPolynomialError,
)
from fockdens.models.algebra import ComplexArray, ComplexVector, RealArray, as_points, as_vector
from fockdens.models.hypersurface import Hypersurface, SurfaceSampleSet
from fockdens.models.reports import FlatnessReport
from fockdens.services.algebra import (
    batch_roots,
    poly_roots,
    random_unitary,
    restrict_to_line,
    restrict_to_lines,
)
from fockdens.services.weights import ball_volume, sample_ball, sphere_area

logger = logging.getLogger(__name__)

FLATNESS_MAX_POINTS = 400
FLATNESS_PHASES = 4
FLATNESS_STEP_FRACTION = 0.1
ANTIPODAL_COSINE = 0.99


def _tangential(d: ComplexArray, grad: ComplexArray) -> ComplexArray:
    """Project rows of ``d`` onto the complex tangent spaces ``{x : sum x_i grad_i = 0}``."""
    g2 = np.sum(np.abs(grad) ** 2, axis=-1, keepdims=True)
    coeff = np.sum(d * grad, axis=-1, keepdims=True) / g2
    return np.asarray(d - coeff * grad.conj())


def _foot_point(
    H: Hypersurface, z: ComplexVector, start: ComplexVector, search_radius: float
) -> ComplexVector | None:
    """Alternate a Newton projection onto ``W`` with a tangential step toward ``z``.

    Raises:
        SingularGradientError: If ``|grad T|`` drops below the declared floor
    """
    w = start.copy()
    for _ in range(FOOT_POINT_MAX_ITERATIONS):
        value = complex(H.T(w)[0])
        grad = H.T.gradient(w)[0]
        g2 = float(np.sum(np.abs(grad) ** 2))
        if math.sqrt(g2) < H.gradient_floor:
            raise SingularGradientError(w.tolist())
        w = w - value * grad.conj() / g2
        grad = H.T.gradient(w)[0]
        if math.sqrt(float(np.sum(np.abs(grad) ** 2))) < H.gradient_floor:
            raise SingularGradientError(w.tolist())
        step = _tangential((z - w).reshape(1, -1), grad.reshape(1, -1))[0]
        residual = abs(complex(H.T(w)[0]))
        if residual <= FOOT_POINT_TOLERANCE and np.linalg.norm(step) <= FOOT_POINT_TOLERANCE * (
            1.0 + float(np.linalg.norm(z - w))
        ):
            return w
        w = w + step
        if np.linalg.norm(w - z) > search_radius:
            return None
    if abs(complex(H.T(w)[0])) <= FOOT_POINT_TOLERANCE:
        return w
    return None


def _axis_starts(H: Hypersurface, z: ComplexVector) -> list[ComplexVector]:
    """Closest root of ``T`` on each coordinate line through ``z``."""
    starts: list[ComplexVector] = []
    for i in range(H.n):
        direction = np.zeros(H.n, dtype=np.complex128)
        direction[i] = 1.0
        q = restrict_to_line(H.T, z, direction)
        if q.degree < 1:
            continue
        roots = [root for root, _ in poly_roots(q)]
        nearest = min(roots, key=abs)
        starts.append(z + nearest * direction)
    return starts


def distance_estimate(
    H: Hypersurface, z: npt.ArrayLike, search_radius: float | None = None
) -> float:
    """Estimate the Euclidean distance from ``z`` to ``W``.

    Starts from ``z`` (first-order seed ``|T|/|grad T|``) and from the nearest
    root on each coordinate line, refines each by projected Newton and
    returns the smallest distance to a converged foot point. Returns ``inf``
    when no foot point is found within the search radius.

    Raises:
        SingularGradientError: If every start runs into a vanishing gradient
    """
    point = as_vector(z, H.n)
    value = complex(H.T(point)[0])
    if abs(value) <= ON_SURFACE_TOLERANCE:
        return 0.0
    grad_norm = float(np.linalg.norm(H.T.gradient(point)[0]))
    seed = abs(value) / grad_norm if grad_norm > 0 else math.inf
    if search_radius is None:
        scale = seed if math.isfinite(seed) else 1.0 + float(np.linalg.norm(point))
        search_radius = SEARCH_RADIUS_FACTOR * max(1.0, scale)

    starts = [point, *_axis_starts(H, point)]
    best = math.inf
    singular: SingularGradientError | None = None
    for start in starts:
        if start is not point and abs(complex(H.T(start)[0])) <= SURFACE_RESIDUAL_TOLERANCE:
            best = min(best, float(np.linalg.norm(start - point)))
        try:
            foot = _foot_point(H, point, start, search_radius)
        except SingularGradientError as exc:
            singular = singular or exc
            continue
        if foot is not None:
            best = min(best, float(np.linalg.norm(foot - point)))
    if best > search_radius:
        if singular is not None and not math.isfinite(best):
            raise singular
        return math.inf
    return best


def distance_estimates(H: Hypersurface, points: npt.ArrayLike) -> RealArray:
    """Vectorized :func:`distance_estimate` for a stack of points.

    All points run the projected Newton iteration together from themselves;
    points that do not converge cleanly fall back to the scalar routine.
    """
    pts = as_points(points, H.n)
    w = pts.copy()
    converged = np.zeros(pts.shape[0], dtype=bool)
    failed = np.zeros(pts.shape[0], dtype=bool)
    for _ in range(FOOT_POINT_MAX_ITERATIONS):
        active = ~(converged | failed)
        if not np.any(active):
            break
        wa = w[active]
        grad = H.T.gradient(wa)
        norms = np.linalg.norm(grad, axis=1)
        bad = norms < H.gradient_floor
        safe = np.where(bad[:, None], 1.0, grad)
        wa = wa - (H.T(wa) / np.sum(np.abs(safe) ** 2, axis=1))[:, None] * safe.conj()
        grad = H.T.gradient(wa)
        bad |= np.linalg.norm(grad, axis=1) < H.gradient_floor
        safe = np.where(bad[:, None], 1.0, grad)
        step = _tangential(pts[active] - wa, safe)
        residual = np.abs(H.T(wa))
        done = (residual <= FOOT_POINT_TOLERANCE) & (
            np.linalg.norm(step, axis=1)
            <= FOOT_POINT_TOLERANCE * (1.0 + np.linalg.norm(pts[active] - wa, axis=1))
        )
        wa = np.where(done[:, None], wa, wa + step)
        idx = np.nonzero(active)[0]
        w[idx] = wa
        converged[idx[done & ~bad]] = True
        failed[idx[bad]] = True
    on_surface = np.abs(H.T(pts)) <= ON_SURFACE_TOLERANCE
    result = np.linalg.norm(w - pts, axis=1)
    result[on_surface] = 0.0
    for k in np.nonzero(~converged & ~on_surface)[0]:
        result[k] = distance_estimate(H, pts[k])
    return np.asarray(result, dtype=np.float64)


def _frame_complement_points(
    frame: ComplexArray, j: int, radius: float, count: int, rng: np.random.Generator
) -> ComplexArray:
    """Uniform points of the radius-``radius`` disc in the span of the other frame columns."""
    others = np.delete(frame, j, axis=1)
    coords = sample_ball(np.zeros(others.shape[1]), radius, count, rng)
    return np.asarray(coords @ others.T, dtype=np.complex128)


def _line_hits(
    H: Hypersurface,
    bases: ComplexArray,
    directions: ComplexArray,
    center: ComplexVector,
    r: float,
) -> ComplexArray:
    """Roots of ``T`` on lines ``bases[k] + t directions[k]`` that fall in ``B(center, r)``.

    Raises:
        LineInSurfaceError: If one of the lines lies in ``W``
    """
    hits: list[ComplexArray] = []
    coeffs = restrict_to_lines(H.T, bases, directions)
    for row, roots in enumerate(batch_roots(coeffs)):
        if roots.size == 0:
            continue
        points = bases[row] + roots[:, None] * directions[row]
        inside = np.linalg.norm(points - center, axis=1) < r
        if np.any(inside):
            hits.append(points[inside])
    if not hits:
        return np.zeros((0, H.n), dtype=np.complex128)
    return np.concatenate(hits)


def _cone_density(
    grads: ComplexArray, points: ComplexArray, focus: ComplexVector, lines: int
) -> RealArray:
    """Hit density on ``W`` of ``lines`` uniform complex lines through ``focus``."""
    n = points.shape[1]
    offset = points - focus
    dist = np.linalg.norm(offset, axis=1)
    unit = offset / dist[:, None]
    cos2 = np.abs(np.sum(grads * unit, axis=1)) ** 2 / np.sum(np.abs(grads) ** 2, axis=1)
    return np.asarray(lines * 2.0 * math.pi * cos2 / (sphere_area(n) * dist ** (2 * n - 2)))


def sample_surface_in_ball(
    H: Hypersurface,
    z: npt.ArrayLike,
    r: float,
    budget: int,
    seed: int,
    batches: int = DEFAULT_BATCHES,
    focus: npt.ArrayLike | None = None,
) -> SurfaceSampleSet:
    """Weighted samples of surface measure on ``W`` intersected with ``B(z, r)``.

    Each batch draws a Haar-random unitary frame and, for every frame
    direction, lines whose base points are uniform in the radius-``r``
    cross-section disc through ``z``. Slice Jacobians sum to one over an
    orthonormal frame, so each hit carries ``cross_area / lines``. With a
    ``focus``, half the budget goes to uniform lines through the focus and
    hits are weighted by the balance heuristic. In ``C^1`` the samples are
    the zeros of ``T`` in the disc with unit weight (counting measure).

    Raises:
        InvalidParameterError: If ``r <= 0`` or ``budget < 1``
        SingularGradientError: If a sample has ``|grad T|`` below the floor
    """
    center = as_vector(z, H.n)
    if not r > 0:
        raise InvalidParameterError("r", r, "must be > 0")
    if budget < 1:
        raise InvalidParameterError("budget", budget, "must be >= 1")
    n = H.n
    rng = np.random.default_rng(seed)

    if n == 1:
        return _sample_points_in_disc(H, center, r)

    focus_point = None if focus is None else as_vector(focus, n)
    share = 2 if focus_point is not None else 1
    batch_count = max(1, min(batches, budget // (share * n)))
    per_direction = max(1, budget // (share * batch_count * n))
    cone_lines = per_direction * n if focus_point is not None else 0
    cross_area = ball_volume(n - 1, r)
    frame_density = per_direction / cross_area
    logger.debug(
        "surface sampling: %d batches x %d directions x %d lines (+%d cone lines)",
        batch_count,
        n,
        per_direction,
        cone_lines,
    )

    all_points: list[ComplexArray] = []
    all_weights: list[RealArray] = []
    all_batches: list[npt.NDArray[np.int64]] = []
    all_grads: list[ComplexArray] = []
    for b in range(batch_count):
        frame = random_unitary(n, rng)
        bases_list = []
        directions_list = []
        for j in range(n):
            offsets = _frame_complement_points(frame, j, r, per_direction, rng)
            bases_list.append(center + offsets)
            directions_list.append(np.repeat(frame[:, j][None, :], per_direction, axis=0))
        if focus_point is not None:
            gaussian = rng.standard_normal((cone_lines, n)) + 1j * rng.standard_normal(
                (cone_lines, n)
            )
            directions_list.append(gaussian / np.linalg.norm(gaussian, axis=1, keepdims=True))
            bases_list.append(np.repeat(focus_point[None, :], cone_lines, axis=0))
        points = _line_hits(
            H, np.concatenate(bases_list), np.concatenate(directions_list), center, r
        )
        if points.shape[0] == 0:
            continue
        grads = H.T.gradient(points)
        density = np.full(points.shape[0], frame_density)
        if focus_point is not None:
            density = density + _cone_density(grads, points, focus_point, cone_lines)
        all_points.append(points)
        all_grads.append(grads)
        all_weights.append(1.0 / (batch_count * density))
        all_batches.append(np.full(points.shape[0], b, dtype=np.int64))

    return _assemble(H, center, r, batch_count, all_points, all_grads, all_weights, all_batches)


def _sample_points_in_disc(H: Hypersurface, center: ComplexVector, r: float) -> SurfaceSampleSet:
    direction = np.ones(1, dtype=np.complex128)
    points = _line_hits(H, np.zeros((1, 1), dtype=np.complex128), direction[None, :], center, r)
    grads = H.T.gradient(points) if points.shape[0] else np.zeros((0, 1), dtype=np.complex128)
    weights = np.ones(points.shape[0])
    batches = np.zeros(points.shape[0], dtype=np.int64)
    return _assemble(H, center, r, 1, [points], [grads], [weights], [batches])


def _assemble(
    H: Hypersurface,
    center: ComplexVector,
    r: float,
    batch_count: int,
    points: list[ComplexArray],
    grads: list[ComplexArray],
    weights: list[RealArray],
    batches: list[npt.NDArray[np.int64]],
) -> SurfaceSampleSet:
    if points:
        pts = np.concatenate(points)
        grd = np.concatenate(grads)
        wts = np.concatenate(weights)
        bts = np.concatenate(batches)
    else:
        pts = np.zeros((0, H.n), dtype=np.complex128)
        grd = np.zeros((0, H.n), dtype=np.complex128)
        wts = np.zeros(0)
        bts = np.zeros(0, dtype=np.int64)
    norms = np.linalg.norm(grd, axis=1)
    if pts.shape[0] and float(norms.min()) < H.gradient_floor:
        k = int(np.argmin(norms))
        raise SingularGradientError(pts[k].tolist())
    residual = np.abs(H.T(pts)) if pts.shape[0] else np.zeros(0)
    loose = int(np.sum(residual > SURFACE_RESIDUAL_TOLERANCE * np.maximum(1.0, norms)))
    if loose:
        logger.debug("%d surface samples exceed the residual tolerance", loose)
    normals = grd.conj() / norms[:, None] if pts.shape[0] else grd
    return SurfaceSampleSet(
        points=pts,
        normals=normals,
        weights=wts,
        batches=bts,
        batch_count=batch_count,
        center=center,
        radius=r,
        boundary_band=BOUNDARY_BAND,
        gradient_norms=norms,
    )


def line_intersections_in_ball(
    H: Hypersurface,
    base: npt.ArrayLike,
    v: npt.ArrayLike,
    z: npt.ArrayLike,
    r: float,
) -> int:
    """Number of zeros of ``t -> T(base + t v)`` (with multiplicity) landing in ``B(z, r)``.

    Roots on the boundary sphere are counted only if strictly inside.

    Raises:
        DegenerateDirectionError: If ``v = 0``
        LineInSurfaceError: If the line lies in ``W``
    """
    a = as_vector(base, H.n)
    direction = as_vector(v, H.n)
    center = as_vector(z, H.n)
    q = restrict_to_line(H.T, a, direction)
    try:
        roots = poly_roots(q)
    except ZeroPolynomialError:
        raise LineInSurfaceError()
    count = 0
    for root, multiplicity in roots:
        if np.linalg.norm(a + root * direction - center) < r:
            count += multiplicity
    return count


def line_counts_in_ball(
    H: Hypersurface,
    bases: npt.ArrayLike,
    v: npt.ArrayLike,
    z: npt.ArrayLike,
    r: float,
) -> npt.NDArray[np.int64]:
    """Vectorized :func:`line_intersections_in_ball` for lines sharing direction ``v``."""
    pts = as_points(bases, H.n)
    direction = as_vector(v, H.n)
    center = as_vector(z, H.n)
    counts = np.zeros(pts.shape[0], dtype=np.int64)
    for row, roots in enumerate(batch_roots(restrict_to_lines(H.T, pts, direction))):
        if roots.size:
            hits = pts[row] + roots[:, None] * direction
            counts[row] = int(np.sum(np.linalg.norm(hits - center, axis=1) < r))
    return counts


def cross_section_points(
    z: ComplexVector, v: ComplexVector, r: float, count: int, rng: np.random.Generator
) -> ComplexArray:
    """Uniform base points in the radius-``r`` disc of ``v^perp`` through ``z``."""
    basis = tangent_basis(v / np.linalg.norm(v))
    coords = sample_ball(np.zeros(basis.shape[1]), r, count, rng)
    return np.asarray(z + coords @ basis.T, dtype=np.complex128)


def tangent_basis(normal: ComplexVector) -> ComplexArray:
    """Orthonormal basis (columns) of the complex orthogonal complement of ``normal``."""
    n = normal.shape[0]
    q, _ = np.linalg.qr(np.column_stack([normal, np.eye(n, dtype=np.complex128)]))
    return np.asarray(q[:, 1:n], dtype=np.complex128)


def _graph_constant(H: Hypersurface, point: ComplexVector, normal: ComplexVector, h: float) -> float:
    """Largest ``|f(x)| / |x|^2`` for the graph of ``W`` over its tangent plane at ``point``."""
    worst = 0.0
    for e in tangent_basis(normal).T:
        for k in range(FLATNESS_PHASES):
            x = h * np.exp(2j * math.pi * k / FLATNESS_PHASES) * e
            q = restrict_to_line(H.T, point + x, normal)
            if q.degree < 1:
                continue
            t = min((root for root, _ in poly_roots(q)), key=abs)
            worst = max(worst, abs(t) / h**2)
    return worst


def _reach_bounds(points: ComplexArray, normals: ComplexArray, cap: float) -> tuple[float, float]:
    """Federer reach bound and nearly-antipodal bottleneck over all sample pairs."""
    diff = points[None, :, :] - points[:, None, :]
    dist = np.linalg.norm(diff, axis=2)
    # normal part of q - p at p: |<q - p, n_p>|
    normal_part = np.abs(np.einsum("pqi,pi->pq", diff, normals.conj()))
    np.fill_diagonal(dist, np.inf)
    with np.errstate(divide="ignore", invalid="ignore"):
        reach = np.where(normal_part > 0, dist**2 / (2.0 * normal_part), np.inf)
        cos_p = normal_part / dist
    antipodal = (cos_p >= ANTIPODAL_COSINE) & (cos_p.T >= ANTIPODAL_COSINE)
    bottleneck = float(np.min(np.where(antipodal, dist / 2.0, np.inf), initial=np.inf))
    return min(float(np.min(reach, initial=np.inf)), cap), min(bottleneck, cap)


def flatness_check(
    H: Hypersurface,
    region_center: npt.ArrayLike,
    region_radius: float,
    budget: int,
    seed: int,
) -> FlatnessReport:
    """Sampled uniform-flatness diagnostics of ``W`` near ``region_center``.

    The graph constant comes from solving ``T(p + x + t n_p) = 0`` for
    tangent offsets of size ``0.1 * region_radius``; the tubular radius from
    the Federer reach bound over sample pairs, capped at ``region_radius``.
    The result is a heuristic certificate.

    Raises:
        InvalidParameterError: If ``budget < 100``
        EmptyRegionError: If no surface point is found in the region
    """
    center = as_vector(region_center, H.n)
    if budget < FLATNESS_MIN_BUDGET:
        raise InvalidParameterError("budget", budget, f"must be >= {FLATNESS_MIN_BUDGET}")
    samples = sample_surface_in_ball(H, center, region_radius, budget, seed)
    if samples.is_empty:
        raise EmptyRegionError(center.tolist(), region_radius)

    rng = np.random.default_rng(seed)
    count = min(len(samples), FLATNESS_MAX_POINTS)
    chosen = np.sort(rng.choice(len(samples), size=count, replace=False))
    points = samples.points[chosen]
    normals = samples.normals[chosen]

    step = FLATNESS_STEP_FRACTION * region_radius
    graph = 0.0
    if H.n > 1:
        graph = max(_graph_constant(H, p, nrm, step) for p, nrm in zip(points, normals, strict=True))
    epsilon, bottleneck = _reach_bounds(points, normals, region_radius)
    logger.warning(
        "flatness report near %s is a sampled heuristic (%d points)", center.tolist(), count
    )
    return FlatnessReport(
        region_center=center.tolist(),
        region_radius=region_radius,
        epsilon_estimate=epsilon,
        max_graph_constant=graph,
        min_normal_injectivity=bottleneck,
        samples=count,
    )
