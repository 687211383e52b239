"""Truncated Fock-space numerics: bases, kernels, frame bounds and extensions.

Every Gram pencil here has the ambient Gram on the right. On a ball
centered at the origin the normalized monomials stay orthogonal (torus
symmetry of the diagonal coordinates), so that Gram is diagonal and the
pencil reduces to singular values of a whitened sample matrix.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Sequence
from typing import Final, Literal

import numpy as np
import numpy.typing as npt
import scipy.integrate
import scipy.linalg
import scipy.special
import scipy.stats

from fockdens.constants import (
    DEFAULT_BATCHES,
    DEFAULT_LEAK_TOLERANCE,
    ON_SURFACE_TOLERANCE,
    PENCIL_DEFINITENESS_FLOOR,
)
from fockdens.exceptions import (
    DimensionError,
    EmptyRegionError,
    InvalidParameterError,
    TruncationError,
    UnderdeterminedError,
    WeightError,
)
from fockdens.models.algebra import ComplexArray, MultiIndex, MultiPoly, RealArray, as_vector
from fockdens.models.fock import FockBasis
from fockdens.models.hypersurface import Hypersurface, SurfaceSample
from fockdens.models.reports import (
    ExtensionReport,
    JensenIdentityReport,
    JensenReport,
    PointBoundReport,
    RestrictionReport,
    SamplingRatioReport,
)
from fockdens.models.sequence import Sequence1D
from fockdens.models.weight import Weight
from fockdens.services.hypersurface import distance_estimates, sample_surface_in_ball
from fockdens.services.weights import ball_volume, sample_ball

logger = logging.getLogger(__name__)

AMBIENT: Final = "ambient"
LSTSQ_CUTOFF = 1e-12
RANGE_CUTOFF = 1e-10
BOUNDARY_QUADRATURE_POINTS = 4096

Target = Hypersurface | Sequence1D | Literal["ambient"]


def _multi_indices(n: int, degree: int) -> tuple[MultiIndex, ...]:
    """All ``a`` with ``|a| <= degree``, graded, then lexicographically descending."""
    indices = (a for a in itertools.product(range(degree + 1), repeat=n) if sum(a) <= degree)
    return tuple(sorted(indices, key=lambda a: (sum(a), tuple(-k for k in a))))


def build_basis(w: Weight, n: int, degree: int) -> FockBasis:
    """Orthonormal monomial basis of the degree-``degree`` truncation.

    With ``Q = U diag(lambda) U^*`` and ``w = U^T z`` the weight's quadratic
    part is ``sum lambda_k |w_k|^2`` and
    ``||w^a||^2 = prod pi a_k! / (2 lambda_k)^{a_k + 1}``. The pluriharmonic
    part is absorbed by the factor ``e^{2h}`` and does not change norms.

    Raises:
        WeightError: If ``w`` is not a quadratic weight
        DimensionError: If ``n`` differs from the weight's dimension
        InvalidParameterError: If ``degree < 0``
    """
    if not isinstance(w, Weight):
        raise WeightError("basis requires quadratic weight")
    if w.n != n:
        raise DimensionError(expected=w.n, actual=n)
    if degree < 0:
        raise InvalidParameterError("degree", degree, "must be >= 0")
    eigenvalues, unitary = np.linalg.eigh(w.Q)
    indices = _multi_indices(n, degree)
    exps = np.array(indices, dtype=np.float64).reshape(-1, n)
    log_norms2 = np.sum(
        math.log(math.pi) + scipy.special.gammaln(exps + 1) - (exps + 1) * np.log(2 * eigenvalues),
        axis=1,
    )
    logger.debug("basis: n=%d degree=%d size=%d", n, degree, len(indices))
    return FockBasis(
        weight=w,
        degree=degree,
        multi_indices=indices,
        eigenvalues=np.asarray(eigenvalues, dtype=np.float64),
        unitary=np.asarray(unitary, dtype=np.complex128),
        log_norms2=np.asarray(log_norms2, dtype=np.float64),
    )


def kernel_eval(b: FockBasis, z: npt.ArrayLike, w: npt.ArrayLike) -> complex:
    """Truncated reproducing kernel ``K_N(z, w) = sum e_a(z) conj(e_a(w))``."""
    left = b.values(as_vector(z, b.n))[0]
    right = b.values(as_vector(w, b.n))[0]
    return complex(np.sum(left * right.conj()))


def basis_norms_monte_carlo(
    b: FockBasis, samples: int = 200_000, seed: int = 0
) -> tuple[RealArray, RealArray]:
    """Monte Carlo estimates of ``||w^a||^2`` with their standard errors.

    Uniform samples of a ball in diagonal coordinates, large enough that the
    Gaussian tail of every degree-``N`` monomial outside it is negligible.
    """
    n = b.n
    radius = math.sqrt((b.degree + n + 12) / float(np.min(b.eigenvalues)))
    rng = np.random.default_rng(seed)
    w = sample_ball(np.zeros(n), radius, samples, rng)
    exps = np.array(b.multi_indices, dtype=np.int64).reshape(-1, n)
    magnitude2 = np.prod(np.abs(w[:, None, :]) ** (2 * exps[None, :, :]), axis=2)
    damping = np.exp(-2.0 * np.sum(b.eigenvalues * np.abs(w) ** 2, axis=1))
    values = ball_volume(n, radius) * magnitude2 * damping[:, None]
    return (
        np.asarray(values.mean(axis=0)),
        np.asarray(values.std(axis=0, ddof=1) / math.sqrt(samples)),
    )


def _anisotropic_pair_mass(a: int, b: int, lam1: float, lam2: float, R: float) -> float:
    """Window mass of ``w1^a w2^b`` (normalized) for ``n = 2`` with distinct eigenvalues.

    With ``u = 2 lam1 |w1|^2`` the mass is
    ``E_u[P(b + 1, (lam2/lam1)(2 lam1 R^2 - u)); u < 2 lam1 R^2]``,
    ``u ~ Gamma(a + 1)``.
    """
    upper = 2 * lam1 * R**2
    ratio = lam2 / lam1

    def integrand(u: float) -> float:
        return float(
            scipy.stats.gamma.pdf(u, a + 1) * scipy.special.gammainc(b + 1, ratio * (upper - u))
        )

    value, _ = scipy.integrate.quad(integrand, 0.0, upper, limit=200)
    return float(value)


def ambient_gram_diagonal(b: FockBasis, R: float, budget: int = 20_000, seed: int = 0) -> RealArray:
    """Diagonal of the ambient Gram ``int_{B(0,R)} |e_a|^2 e^{-2 phi}``.

    Off-diagonal entries vanish exactly. Closed form through the regularized
    incomplete gamma function when ``Q`` is a multiple of the identity,
    one-dimensional quadrature for ``n = 2``, Monte Carlo otherwise.
    """
    if not R > 0:
        raise InvalidParameterError("R", R, "must be > 0")
    exps = np.array(b.multi_indices, dtype=np.int64).reshape(-1, b.n)
    if b.is_isotropic:
        lam = float(b.eigenvalues[0])
        return np.asarray(scipy.special.gammainc(exps.sum(axis=1) + b.n, 2 * lam * R**2))
    if b.n == 2:
        lam1, lam2 = (float(x) for x in b.eigenvalues)
        return np.array(
            [_anisotropic_pair_mass(int(a), int(c), lam1, lam2, R) for a, c in exps]
        )
    rng = np.random.default_rng(seed)
    points = sample_ball(np.zeros(b.n), R, budget, rng)
    weighted = b.weighted_values(points)
    return np.asarray(ball_volume(b.n, R) * np.mean(np.abs(weighted) ** 2, axis=0))


def mass_leak(b: FockBasis, gram_diagonal: RealArray) -> float:
    """Largest mass of a top-degree basis element outside the window."""
    top = np.array([sum(a) == b.degree for a in b.multi_indices])
    return float(np.max(1.0 - gram_diagonal[top]))


def _checked_gram(b: FockBasis, R: float, leak_tolerance: float, seed: int) -> tuple[RealArray, float]:
    diagonal = ambient_gram_diagonal(b, R, seed=seed)
    if float(np.min(diagonal)) <= PENCIL_DEFINITENESS_FLOOR:
        raise TruncationError(
            f"window/degree mismatch: ambient Gram singular "
            f"(smallest entry {float(np.min(diagonal)):.3e}) for R={R}, N={b.degree}"
        )
    leak = mass_leak(b, diagonal)
    if leak > leak_tolerance:
        raise TruncationError(
            f"window/degree mismatch: degree-{b.degree} mass outside B(0,{R}) is {leak:.3e} "
            f"> tolerance {leak_tolerance:.1e}; enlarge R or lower N"
        )
    return diagonal, leak


def _frame_bounds(rows: ComplexArray, row_weights: RealArray, diagonal: RealArray) -> tuple[float, float]:
    """Extreme eigenvalues of ``(E^* diag(a) E, diag(B))`` via singular values."""
    if rows.shape[0] == 0:
        return 0.0, 0.0
    whitened = np.sqrt(row_weights)[:, None] * rows / np.sqrt(diagonal)[None, :]
    singular = scipy.linalg.svdvals(whitened)
    upper = float(singular[0] ** 2)
    lower = float(singular[-1] ** 2) if rows.shape[0] >= rows.shape[1] else 0.0
    return lower, upper


def _target_label(target: Target) -> str:
    if isinstance(target, Hypersurface):
        return "hypersurface"
    if isinstance(target, Sequence1D):
        return f"sequence:{target.label}" if target.label else "sequence"
    return AMBIENT


def sampling_ratio_bounds(
    target: Target,
    w: Weight,
    R: float,
    degree: int,
    budget: int = 2000,
    seed: int = 0,
    leak_tolerance: float = DEFAULT_LEAK_TOLERANCE,
) -> SamplingRatioReport:
    """Frame bounds ``m, M`` of a target against the window ``B(0, R)``.

    ``m ||F||^2_{B(0,R)} <= ||F||^2_target <= M ||F||^2_{B(0,R)}`` over the
    degree-``N`` truncation, where the target norm is the surface integral
    over ``W cap B(0,R)``, the sum over sequence points in the window, or the
    window itself (``"ambient"``, giving ``m = M = 1``). Hypersurface targets
    also report the spread of per-batch bounds.

    Raises:
        TruncationError: If the window mass of a top-degree basis element
            leaks above ``leak_tolerance`` or the ambient Gram is singular
        DimensionError: If target and weight dimensions differ
    """
    basis = build_basis(w, w.n, degree)
    diagonal, leak = _checked_gram(basis, R, leak_tolerance, seed)
    label = _target_label(target)
    lower_err = upper_err = 0.0

    if isinstance(target, Hypersurface):
        if target.n != w.n:
            raise DimensionError(expected=w.n, actual=target.n)
        samples = sample_surface_in_ball(target, np.zeros(w.n), R, budget, seed)
        rows = basis.weighted_values(samples.points) if len(samples) else np.zeros((0, basis.size))
        lower, upper = _frame_bounds(rows, samples.weights, diagonal)
        if samples.batch_count > 1 and len(samples):
            per_batch = [
                _frame_bounds(
                    rows[samples.batches == k],
                    samples.batch_count * samples.weights[samples.batches == k],
                    diagonal,
                )
                for k in range(samples.batch_count)
            ]
            spread = np.array(per_batch)
            lower_err = float(np.std(spread[:, 0], ddof=1) / math.sqrt(samples.batch_count))
            upper_err = float(np.std(spread[:, 1], ddof=1) / math.sqrt(samples.batch_count))
    elif isinstance(target, Sequence1D):
        if w.n != 1:
            raise DimensionError(expected=1, actual=w.n)
        points = np.array([p for p in target.points if abs(p) < R], dtype=np.complex128)
        rows = basis.weighted_values(points.reshape(-1, 1)) if points.size else np.zeros((0, basis.size))
        lower, upper = _frame_bounds(rows, np.ones(rows.shape[0]), diagonal)
    elif target == AMBIENT:
        lower = upper = 1.0
    else:
        raise InvalidParameterError("target", target, "hypersurface, sequence or 'ambient'")

    logger.info("sampling ratio %s: m=%.4e M=%.4e (R=%s, N=%d)", label, lower, upper, R, degree)
    return SamplingRatioReport(
        target=label,
        lower=lower,
        upper=max(upper, lower),
        window_radius=R,
        degree=degree,
        conditioning=float(np.max(diagonal) / np.min(diagonal)),
        mass_leak=leak,
        lower_std_error=lower_err,
        upper_std_error=upper_err,
    )


def surface_values(
    H: Hypersurface, f: MultiPoly, R: float, budget: int = 2000, seed: int = 0
) -> list[tuple[SurfaceSample, complex]]:
    """Samples of ``W cap B(0, R)`` paired with the values of ``f`` there."""
    samples = sample_surface_in_ball(H, np.zeros(H.n), R, budget, seed)
    values = f(samples.points) if len(samples) else np.zeros(0, dtype=np.complex128)
    return [(sample, complex(v)) for sample, v in zip(samples, values, strict=True)]


def min_norm_extension(
    H: Hypersurface,
    value_samples: Sequence[tuple[SurfaceSample, complex]],
    w: Weight,
    degree: int,
    regularization: float = 0.0,
) -> ExtensionReport:
    """Smallest truncated ``F`` whose restriction fits the surface data.

    Least squares in ``L^2(W, e^{-2 phi} dA)`` over the orthonormal basis,
    so the ambient norm is the coefficient norm; among exact fits the
    minimum-norm solution is returned. ``regularization > 0`` adds the
    Tikhonov term ``lambda ||c||^2``.

    Raises:
        InvalidParameterError: If ``regularization < 0`` or a value is not finite
        UnderdeterminedError: If there are fewer samples than unknowns and
            ``regularization = 0``
    """
    if regularization < 0:
        raise InvalidParameterError("regularization", regularization, "must be >= 0")
    basis = build_basis(w, H.n, degree)
    values = np.array([v for _, v in value_samples], dtype=np.complex128)
    if not np.all(np.isfinite(values)):
        raise InvalidParameterError("value_samples", "non-finite", "values must be finite")
    if regularization == 0 and len(value_samples) < basis.size:
        raise UnderdeterminedError(samples=len(value_samples), unknowns=basis.size)

    indices = list(basis.multi_indices)
    if not value_samples or not np.any(values):
        return ExtensionReport(
            degree=degree,
            regularization=regularization,
            coefficients=[(a, 0j) for a in indices],
            residual=0.0,
            ambient_norm=0.0,
            surface_norm=0.0,
            ratio=0.0,
        )

    points = np.array([s.point for s, _ in value_samples], dtype=np.complex128).reshape(-1, H.n)
    root_area = np.sqrt(np.array([s.area_weight for s, _ in value_samples]))
    design = root_area[:, None] * basis.weighted_values(points)
    data = root_area * values * np.exp(-w.value(points))
    if regularization > 0:
        design = np.vstack([design, math.sqrt(regularization) * np.eye(basis.size)])
        rhs = np.concatenate([data, np.zeros(basis.size, dtype=np.complex128)])
    else:
        rhs = data
    coefficients, *_ = scipy.linalg.lstsq(design, rhs, cond=LSTSQ_CUTOFF)

    fitted = design[: data.shape[0]] @ coefficients
    surface_norm = float(np.linalg.norm(data))
    residual = float(np.linalg.norm(fitted - data) / surface_norm)
    ambient_norm = float(np.linalg.norm(coefficients))
    logger.info(
        "extension: N=%d lambda=%g residual=%.2e ratio=%.4e",
        degree, regularization, residual, (ambient_norm / surface_norm) ** 2,
    )
    return ExtensionReport(
        degree=degree,
        regularization=regularization,
        coefficients=[(a, complex(c)) for a, c in zip(indices, coefficients, strict=True)],
        residual=residual,
        ambient_norm=ambient_norm,
        surface_norm=surface_norm,
        ratio=(ambient_norm / surface_norm) ** 2,
    )


def _check_zeros(zeros: Sequence[complex]) -> RealArray:
    moduli = np.abs(np.asarray(list(zeros), dtype=np.complex128))
    if np.any(moduli == 0):
        raise InvalidParameterError("zeros", 0, "the origin must not be a zero")
    return np.asarray(moduli)


def jensen_weight_side(w: Weight, R: float) -> float:
    """``int_0^R (int_{D(0,s)} Delta phi dA) / s ds = 2 pi Q R^2``.

    ``Delta`` is the real Laplacian, so ``Delta phi = 4 Q`` for
    ``phi = Q |z|^2 + 2 Re h``.
    """
    if w.n != 1:
        raise DimensionError(expected=1, actual=w.n)
    return 2.0 * math.pi * float(w.Q[0, 0].real) * R**2


def jensen_ratio(zeros: Sequence[complex], w: Weight, R: float) -> JensenReport:
    """Counting side against weight side of the one-dimensional Jensen argument.

    ``lhs = int_1^R n(0,s)/s ds = sum_{|g|<R} log(R / max(1, |g|))``. Both
    sides are reported; no threshold is applied.

    Raises:
        InvalidParameterError: If ``R <= 1`` or a zero sits at the origin
    """
    if not R > 1:
        raise InvalidParameterError("R", R, "must be > 1")
    moduli = _check_zeros(zeros)
    inside = moduli[moduli < R]
    lhs = float(np.sum(np.log(R / np.maximum(1.0, inside))))
    rhs = jensen_weight_side(w, R)
    return JensenReport(R=R, lhs=lhs, rhs=rhs, ratio=lhs / rhs)


def jensen_boundary_mean(
    zeros: Sequence[complex], R: float, leading: complex = 1.0, points: int = BOUNDARY_QUADRATURE_POINTS
) -> float:
    """Mean of ``log|f|`` on ``|z| = R`` for ``f = leading * prod (z - g)``.

    Trapezoidal rule, spectrally accurate for periodic integrands.
    """
    theta = 2 * math.pi * np.arange(points) / points
    circle = R * np.exp(1j * theta)
    roots = np.asarray(list(zeros), dtype=np.complex128)
    logs = np.sum(np.log(np.abs(circle[:, None] - roots[None, :])), axis=1) + math.log(abs(leading))
    return float(np.mean(logs))


def jensen_identity_check(
    zeros: Sequence[complex], R: float, leading: complex = 1.0
) -> JensenIdentityReport:
    """Classical Jensen formula ``mean log|f| - log|f(0)| = sum log(R/|g|)``.

    Raises:
        InvalidParameterError: If ``R <= 0`` or a zero sits at the origin
    """
    if not R > 0:
        raise InvalidParameterError("R", R, "must be > 0")
    moduli = _check_zeros(zeros)
    counting = float(np.sum(np.log(R / moduli[moduli < R])))
    at_origin = float(np.sum(np.log(moduli))) + math.log(abs(leading))
    boundary = jensen_boundary_mean(zeros, R, leading)
    return JensenIdentityReport(
        R=R,
        counting=counting,
        boundary_mean=boundary,
        log_abs_at_origin=at_origin,
        gap=boundary - at_origin - counting,
    )


def _range_whitening(gram: ComplexArray) -> ComplexArray:
    """Map ``P D^{-1/2}`` onto the numerical range of a PSD Gram."""
    evals, evecs = scipy.linalg.eigh(gram)
    keep = evals > RANGE_CUTOFF * max(float(evals[-1]), 0.0)
    return np.asarray(evecs[:, keep] / np.sqrt(evals[keep]))


def _check_basis_weight(w: Weight, basis: FockBasis) -> None:
    """The basis must be orthonormal for ``w``."""
    same = (
        basis.weight is w
        or (
            w.n == basis.n
            and np.allclose(w.Q, basis.weight.Q)
            and w.pluriharmonic == basis.weight.pluriharmonic
        )
    )
    if not same:
        raise WeightError("basis was built for a different weight")


def _min_ratio(tube: ComplexArray, whitening: ComplexArray) -> float:
    reduced = whitening.conj().T @ tube @ whitening
    return float(scipy.linalg.eigvalsh(0.5 * (reduced + reduced.conj().T))[0])


def tube_restriction_ratio(
    H: Hypersurface,
    w: Weight,
    basis: FockBasis,
    eps: float,
    R: float,
    budget: int = 4000,
    seed: int = 0,
    leak_tolerance: float = DEFAULT_LEAK_TOLERANCE,
) -> RestrictionReport:
    """Largest ``C`` with ``C eps^2 int_W |F|^2 e^{-2 phi} <= int_{N_eps(W)} |F|^2 e^{-2 phi}``.

    Both integrals are restricted to ``B(0, R)``. Functions vanishing on the
    surface samples are excluded, the inequality being trivial for them.

    Raises:
        InvalidParameterError: If ``eps <= 0``
        WeightError: If ``basis`` was built for another weight
        EmptyRegionError: If ``W`` misses the window
        TruncationError: If the truncation leaks out of the window
    """
    if not eps > 0:
        raise InvalidParameterError("eps", eps, "must be > 0")
    _check_basis_weight(w, basis)
    _checked_gram(basis, R, leak_tolerance, seed)
    samples = sample_surface_in_ball(H, np.zeros(H.n), R, budget, seed)
    if samples.is_empty:
        raise EmptyRegionError(center=[0.0] * H.n, radius=R)
    rows = np.sqrt(samples.weights)[:, None] * basis.weighted_values(samples.points)
    whitening = _range_whitening(rows.conj().T @ rows)

    rng = np.random.default_rng([seed, 2])
    ball = sample_ball(np.zeros(H.n), R, budget, rng)
    inside = distance_estimates(H, ball) < eps
    values = basis.weighted_values(ball[inside])
    scale = ball_volume(H.n, R) / budget
    tube = scale * values.conj().T @ values
    constant = _min_ratio(tube, whitening) / eps**2

    batch_of = np.arange(budget)[inside] % DEFAULT_BATCHES
    replicas = []
    for k in range(DEFAULT_BATCHES):
        part = values[batch_of == k]
        replicas.append(_min_ratio(DEFAULT_BATCHES * scale * part.conj().T @ part, whitening) / eps**2)
    std = float(np.std(replicas, ddof=1) / math.sqrt(DEFAULT_BATCHES))
    logger.info("tube restriction: eps=%g C=%.4e +- %.1e", eps, constant, std)
    return RestrictionReport(
        epsilon=eps, window_radius=R, degree=basis.degree, constant=constant, std_error=std
    )


def local_point_bound(
    H: Hypersurface,
    w: Weight,
    basis: FockBasis,
    z: npt.ArrayLike,
    eps: float,
    trials: int = 50,
    seed: int = 0,
    budget: int = 2000,
) -> PointBoundReport:
    """Ratios ``|F(z)|^2 e^{-2 phi(z)} / mean_{W cap B(z,eps)} |F|^2 e^{-2 phi}``.

    ``F`` runs over random truncated functions with complex Gaussian
    coefficients.

    Raises:
        InvalidParameterError: If ``z`` is not on ``W`` or ``eps <= 0``
        WeightError: If ``basis`` was built for another weight
        EmptyRegionError: If no surface samples fall in ``B(z, eps)``
    """
    center = as_vector(z, H.n)
    if not eps > 0:
        raise InvalidParameterError("eps", eps, "must be > 0")
    _check_basis_weight(w, basis)
    if abs(complex(H.T(center)[0])) > ON_SURFACE_TOLERANCE:
        raise InvalidParameterError("z", center.tolist(), "must lie on W")
    samples = sample_surface_in_ball(H, center, eps, budget, seed)
    if samples.is_empty:
        raise EmptyRegionError(center=center.tolist(), radius=eps)
    local = basis.weighted_values(samples.points)
    at_point = basis.weighted_values(center)[0]
    share = samples.weights / samples.total_area()

    rng = np.random.default_rng([seed, 3])
    coefficients = rng.standard_normal((trials, basis.size)) + 1j * rng.standard_normal(
        (trials, basis.size)
    )
    point_values = np.abs(coefficients @ at_point) ** 2
    means = (np.abs(local @ coefficients.T) ** 2).T @ share
    constants = [float(c) for c in point_values / means]
    return PointBoundReport(
        point=center.tolist(),
        epsilon=eps,
        trials=trials,
        constants=constants,
        worst=max(constants),
    )
