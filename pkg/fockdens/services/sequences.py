"""One-dimensional sequences and the split-density criteria for product sequences in C^2."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from pathlib import Path

import numpy as np
import numpy.typing as npt
from scipy.spatial import cKDTree

from fockdens.constants import LELONG_FACTOR
from fockdens.exceptions import DimensionError, InvalidParameterError, SceneValidationError
from fockdens.models.algebra import RealArray, as_vector
from fockdens.models.reports import CriterionReport, SeqDensityReport, Verdict
from fockdens.models.sequence import ProductSequence, Sequence1D
from fockdens.models.weight import Weight
from fockdens.services.weights import ball_volume

logger = logging.getLogger(__name__)

REAL_CONVENTION = "real Laplacian (4 d/dz d/dzbar)"
RADIUS_SCHEDULE = (1, 2, 4)

Grid = Sequence[tuple[complex, complex]]


def separation(s: Sequence1D) -> float:
    """Minimum pairwise distance of the points.

    Raises:
        InvalidParameterError: If the sequence has fewer than 2 points
    """
    if len(s) < 2:
        raise InvalidParameterError("sequence", len(s), "separation needs at least 2 points")
    pts = np.asarray(s.points, dtype=np.complex128)
    tree = cKDTree(np.column_stack([pts.real, pts.imag]))
    distances, _ = tree.query(tree.data, k=2)
    return float(np.min(distances[:, 1]))


def lattice(alpha: float, half_width: float, label: str = "") -> Sequence1D:
    """Points of ``alpha (Z + iZ)`` in the square ``|Re|, |Im| <= half_width``."""
    if not alpha > 0:
        raise InvalidParameterError("alpha", alpha, "must be > 0")
    k = int(math.floor(half_width / alpha + 1e-9))
    steps = alpha * np.arange(-k, k + 1)
    points = [complex(x, y) for x in steps for y in steps]
    return Sequence1D(points=points, label=label or f"lattice {alpha:g}")


def _levi_entries(w: Weight) -> tuple[float, float, float]:
    if w.n != 2:
        raise DimensionError(expected=2, actual=w.n)
    q11 = float(w.Q[0, 0].real)
    q22 = float(w.Q[1, 1].real)
    det = float(np.linalg.det(w.Q).real)
    return q11, q22, det


def fiber_weight(w: Weight) -> Weight:
    """Weight ``phi(gamma, .)`` of a vertical fiber; only its Laplacian ``4 Q22`` matters."""
    _, q22, _ = _levi_entries(w)
    return Weight.from_levi([[q22]])


def density_1d(s: Sequence1D, w: Weight, z: complex, R: float) -> float:
    """``#(s cap D(z, R)) / int_{D(z,R)} Delta phi`` with the real Laplacian.

    For ``phi = Q |z|^2 + 2 Re h`` the denominator is ``4 Q pi R^2``.

    Raises:
        InvalidParameterError: If ``R <= 0``
        DimensionError: If ``w`` is not one-dimensional
    """
    if not R > 0:
        raise InvalidParameterError("R", R, "must be > 0")
    if w.n != 1:
        raise DimensionError(expected=1, actual=w.n)
    if len(s) == 0:
        return 0.0
    count = int(np.sum(np.abs(np.asarray(s.points) - z) < R))
    return count / (4.0 * float(w.Q[0, 0].real) * math.pi * R**2)


def seq_density_report(s: Sequence1D, w: Weight, z: complex, R: float) -> SeqDensityReport:
    """``density_1d`` together with the raw count behind it."""
    density = density_1d(s, w, z, R)
    count = sum(1 for p in s.points if abs(p - z) < R)
    return SeqDensityReport(label=s.label, center=complex(z), R=R, count=count, density=density)


def _fiber_densities(ps: ProductSequence, w: Weight, r: float, worst: str) -> list[float]:
    """Worst fiber density over centers ``{0} cup Lambda_j`` and radii ``{r, 2r, 4r}``."""
    weight = fiber_weight(w)
    pick = max if worst == "max" else min
    densities = []
    for fiber in ps.lambdas:
        centers = [0j, *fiber.points]
        values = [density_1d(fiber, weight, c, k * r) for c in centers for k in RADIUS_SCHEDULE]
        densities.append(pick(values))
    return densities


def _counts(gamma: Sequence1D, grid: Grid, r: float) -> RealArray:
    pts = np.asarray(gamma.points, dtype=np.complex128)
    z = np.array([g[0] for g in grid], dtype=np.complex128)
    if pts.size == 0:
        return np.zeros(z.shape[0])
    return np.sum(np.abs(z[:, None] - pts[None, :]) < r, axis=1).astype(np.float64)


def _verdict(margins: Sequence[float]) -> Verdict:
    if len(margins) == 0:
        return Verdict.INCONCLUSIVE
    smallest = min(margins)
    if smallest > 0:
        return Verdict.SATISFIED
    if smallest < 0:
        return Verdict.VIOLATED
    return Verdict.INCONCLUSIVE


def _wording(mode: str, verdict: Verdict) -> str:
    prop = "interpolation" if mode == "interp" else "sampling"
    if verdict is Verdict.SATISFIED:
        return f"sufficient condition for {prop} holds at every tested point"
    if verdict is Verdict.VIOLATED:
        return (
            f"sufficient condition for {prop} is violated; the condition is one-sided "
            f"(sufficient, not necessary), so this does not show the sequence fails {prop}"
        )
    return f"sufficient condition for {prop} is inconclusive (zero margin or empty grid)"


def _product_check(
    mode: str, ps: ProductSequence, w: Weight, r: float, eps: float, grid: Grid
) -> CriterionReport:
    if not r > 0:
        raise InvalidParameterError("r", r, "must be > 0")
    if not 0 <= eps < 1:
        raise InvalidParameterError("eps", eps, "must lie in [0, 1)")
    q11, q22, det = _levi_entries(w)
    counts = _counts(ps.gamma, grid, r)
    lhs = counts / (r**2 * 4 * q11)
    rhs = np.full(len(grid), det / (16 * q11 * q22))
    lhs_dbar = counts / (r**2 * q11)
    rhs_dbar = np.full(len(grid), det / (q11 * q22))

    sign = 1.0 if mode == "interp" else -1.0
    margins = sign * (rhs - lhs)
    margins_dbar = sign * (rhs_dbar - lhs_dbar)
    if mode == "interp":
        lambda_densities = _fiber_densities(ps, w, r, "max")
        lambda_margins = [(1 - eps) - d for d in lambda_densities]
    else:
        lambda_densities = _fiber_densities(ps, w, r, "min")
        lambda_margins = [d - (1 + eps) for d in lambda_densities]

    combined = [*margins.tolist(), *lambda_margins]
    verdict = _verdict(combined)
    logger.info("product %s check: %s over %d grid points", mode, verdict.value, len(grid))
    return CriterionReport(
        mode=mode,
        radius=r,
        epsilon=eps,
        convention=REAL_CONVENTION,
        grid=[[complex(a), complex(b)] for a, b in grid],
        lhs=lhs.tolist(),
        rhs=rhs.tolist(),
        margins=margins.tolist(),
        lhs_dbar=lhs_dbar.tolist(),
        rhs_dbar=rhs_dbar.tolist(),
        margins_dbar=margins_dbar.tolist(),
        lambda_densities=lambda_densities,
        lambda_margins=lambda_margins,
        min_margin=min(combined) if combined else 0.0,
        max_margin=max(combined) if combined else 0.0,
        verdict=verdict,
        wording=_wording(mode, verdict),
    )


def product_interp_check(
    ps: ProductSequence, w: Weight, r: float, eps: float, grid: Grid
) -> CriterionReport:
    """Sufficient condition for ``Sigma = {(gamma_j, lambda_jk)}`` to be interpolating.

    (a) every fiber has density at most ``1 - eps`` and (b)
    ``#(Gamma cap D(z,r)) / (r^2 Delta_z phi) < det(i ddbar phi) / (Delta_z phi Delta_w phi)``
    at every grid point.

    Raises:
        DimensionError: If ``w`` is not a weight on C^2
        InvalidParameterError: If ``r <= 0`` or ``eps`` is outside ``[0, 1)``
    """
    return _product_check("interp", ps, w, r, eps, grid)


def product_samp_check(
    ps: ProductSequence, w: Weight, r: float, eps: float, grid: Grid
) -> CriterionReport:
    """Sufficient condition for sampling: fiber densities ``>= 1 + eps`` and the reversed inequality."""
    return _product_check("samp", ps, w, r, eps, grid)


def default_grid(ps: ProductSequence) -> list[tuple[complex, complex]]:
    """Origin plus every ``(gamma_j, 0)``."""
    return [(0j, 0j), *((complex(g), 0j) for g in ps.gamma.points if g != 0)]


def gamma_cross_c_density(
    gamma: Sequence1D, w: Weight, x: npt.ArrayLike, r: float
) -> float:
    """Closed-form density of ``W = Gamma x C`` at ``x``.

    ``Upsilon = (pi/2) sum_j Area((gamma_j x C) cap B(x,r)) / vol * e_1 e_1^*``
    with flat slice discs ``pi (r^2 - |x_1 - gamma_j|^2)_+``; the top
    eigenvalue against ``Q`` is that scalar times ``(Q^-1)_11 = Q22 / det Q``.
    """
    if not r > 0:
        raise InvalidParameterError("r", r, "must be > 0")
    center = as_vector(x, 2)
    _, q22, det = _levi_entries(w)
    pts = np.asarray(gamma.points, dtype=np.complex128)
    areas = math.pi * np.maximum(r**2 - np.abs(center[0] - pts) ** 2, 0.0)
    return float(LELONG_FACTOR * np.sum(areas) / ball_volume(2, r) * q22 / det)


def _parse_point(line: str, path: Path, lineno: int) -> complex:
    parts = line.split()
    if len(parts) != 2:
        raise SceneValidationError(f"{path.name}:{lineno}", f"expected 're im', got {line!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as e:
        raise SceneValidationError(f"{path.name}:{lineno}", str(e)) from e


def _content_lines(path: Path) -> list[tuple[int, str]]:
    if not path.is_file():
        raise SceneValidationError(str(path), "file not found")
    lines = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    return lines


def read_sequence(path: Path, label: str = "") -> Sequence1D:
    """Read one complex point per line as ``re im``; ``#`` starts a comment."""
    points = [_parse_point(line, path, lineno) for lineno, line in _content_lines(path)]
    try:
        return Sequence1D(points=points, label=label or path.stem)
    except ValueError as e:
        raise SceneValidationError(path.name, str(e)) from e


def read_product_sequence(path: Path, label: str = "") -> ProductSequence:
    """Read a sectioned file: ``[gamma]`` then one ``[lambda]`` section per gamma point."""
    gamma: list[complex] | None = None
    fibers: list[list[complex]] = []
    current: list[complex] | None = None
    for lineno, line in _content_lines(path):
        if line.startswith("["):
            section = line.strip("[]").strip().lower()
            if section == "gamma" and gamma is None:
                gamma = current = []
            elif section == "lambda" and gamma is not None:
                current = []
                fibers.append(current)
            else:
                raise SceneValidationError(f"{path.name}:{lineno}", f"unexpected section {line!r}")
        elif current is None:
            raise SceneValidationError(f"{path.name}:{lineno}", "point outside a section")
        else:
            current.append(_parse_point(line, path, lineno))
    if gamma is None:
        raise SceneValidationError(path.name, "missing [gamma] section")
    try:
        return ProductSequence(
            gamma=Sequence1D(points=gamma),
            lambdas=[Sequence1D(points=f) for f in fibers],
            label=label or path.stem,
        )
    except ValueError as e:
        raise SceneValidationError(path.name, str(e)) from e
