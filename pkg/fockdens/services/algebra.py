"""Polynomial and Hermitian-pencil primitives shared by the geometry services."""

from __future__ import annotations

import logging
from math import comb

import numpy as np
import numpy.typing as npt
import scipy.linalg

from fockdens.constants import (
    COEFFICIENT_TRIM_RELATIVE,
    NEWTON_POLISH_STEPS,
    PENCIL_DEFINITENESS_FLOOR,
    ROOT_CLUSTER_RELATIVE,
)
from fockdens.exceptions import (
    DegenerateDirectionError,
    DimensionError,
    IndefiniteDenominatorError,
    LineInSurfaceError,
    ZeroPolynomialError,
)
from fockdens.models.algebra import (
    ComplexArray,
    ComplexVector,
    HermitianForm,
    MultiPoly,
    RealArray,
    UniPoly,
    as_points,
    as_vector,
)

logger = logging.getLogger(__name__)


def eval_poly(p: MultiPoly, z: npt.ArrayLike) -> tuple[complex, ComplexVector]:
    """Evaluate ``p`` and its holomorphic gradient at ``z``.

    Raises:
        DimensionError: If ``len(z) != p.n``
    """
    point = as_vector(z, p.n)
    value = complex(p(point)[0])
    gradient = p.gradient(point)[0]
    return value, gradient


def _binomial_powers(
    a: ComplexArray, v: ComplexArray, max_power: int
) -> list[ComplexArray]:
    """Coefficients in ``t`` of ``(a + t v)^k`` for ``k = 0..max_power``.

    ``a`` and ``v`` have shape ``(m,)``; entry ``k`` of the result has shape
    ``(m, k + 1)``.
    """
    powers_a = np.ones((max_power + 1, a.shape[0]), dtype=np.complex128)
    powers_v = np.ones((max_power + 1, a.shape[0]), dtype=np.complex128)
    for k in range(1, max_power + 1):
        powers_a[k] = powers_a[k - 1] * a
        powers_v[k] = powers_v[k - 1] * v
    result = []
    for k in range(max_power + 1):
        coeffs = np.empty((a.shape[0], k + 1), dtype=np.complex128)
        for j in range(k + 1):
            coeffs[:, j] = comb(k, j) * powers_a[k - j] * powers_v[j]
        result.append(coeffs)
    return result


def _batch_polymul(x: ComplexArray, y: ComplexArray) -> ComplexArray:
    """Row-wise product of ascending coefficient arrays."""
    out = np.zeros((x.shape[0], x.shape[1] + y.shape[1] - 1), dtype=np.complex128)
    for j in range(x.shape[1]):
        out[:, j : j + y.shape[1]] += x[:, j : j + 1] * y
    return out


def restrict_to_lines(p: MultiPoly, bases: npt.ArrayLike, v: npt.ArrayLike) -> ComplexArray:
    """Coefficients of ``t -> p(a + t v)`` for a stack of base points ``a``.

    ``v`` is one direction shared by all lines or one direction per line.
    Returns an array of shape ``(m, degree(p) + 1)`` in ascending order. The
    expansion is exact (binomial), not interpolated.

    Raises:
        DegenerateDirectionError: If a direction is the zero vector
        DimensionError: If ``bases`` or ``v`` do not live in ``C^n``
    """
    pts = as_points(bases, p.n)
    m = pts.shape[0]
    directions = np.broadcast_to(as_points(v, p.n), (m, p.n))
    if not np.all(np.any(directions != 0, axis=1)):
        raise DegenerateDirectionError()
    degree = max(p.degree, 0)
    out = np.zeros((m, degree + 1), dtype=np.complex128)
    if p.is_zero:
        return out

    max_powers = np.max(np.array([alpha for alpha, _ in p.terms]), axis=0)
    tables = [
        _binomial_powers(pts[:, i], directions[:, i], int(max_powers[i]))
        for i in range(p.n)
    ]
    for alpha, coeff in p.terms:
        term = np.full((m, 1), coeff, dtype=np.complex128)
        for i, power in enumerate(alpha):
            if power:
                term = _batch_polymul(term, tables[i][power])
        out[:, : term.shape[1]] += term
    return out


def restrict_to_line(p: MultiPoly, a: npt.ArrayLike, v: npt.ArrayLike) -> UniPoly:
    """Restriction ``q(t) = p(a + t v)`` of ``p`` to a complex line."""
    base = as_vector(a, p.n)
    direction = as_vector(v, p.n)
    coeffs = restrict_to_lines(p, base.reshape(1, -1), direction)[0]
    return UniPoly(tuple(complex(c) for c in coeffs))


def _companion(coeffs: ComplexArray) -> ComplexArray:
    """Companion matrices for rows of ascending coefficients with nonzero leading term."""
    rows, width = coeffs.shape
    degree = width - 1
    companion = np.zeros((rows, degree, degree), dtype=np.complex128)
    if degree > 1:
        idx = np.arange(degree - 1)
        companion[:, idx + 1, idx] = 1.0
    companion[:, :, -1] = -coeffs[:, :-1] / coeffs[:, -1:]
    return companion


def _horner(coeffs: ComplexArray, t: ComplexArray) -> tuple[ComplexArray, ComplexArray]:
    """Row-wise values and derivatives; ``coeffs`` ``(m, d+1)``, ``t`` ``(m, k)``."""
    value = np.zeros_like(t)
    deriv = np.zeros_like(t)
    for j in range(coeffs.shape[1] - 1, -1, -1):
        deriv = deriv * t + value
        value = value * t + coeffs[:, j : j + 1]
    return value, deriv


def _polish(coeffs: ComplexArray, roots: ComplexArray) -> ComplexArray:
    polished = roots.copy()
    for _ in range(NEWTON_POLISH_STEPS):
        value, deriv = _horner(coeffs, polished)
        usable = np.abs(deriv) > 0
        step = np.where(usable, value / np.where(usable, deriv, 1.0), 0.0)
        candidate = polished - step
        new_value, _ = _horner(coeffs, candidate)
        polished = np.where(np.abs(new_value) < np.abs(value), candidate, polished)
    return polished


def _trim(coeffs: ComplexArray) -> ComplexArray:
    scale = float(np.max(np.abs(coeffs)))
    keep = np.nonzero(np.abs(coeffs) > COEFFICIENT_TRIM_RELATIVE * scale)[0]
    return coeffs[: int(keep[-1]) + 1]


def _raw_roots(coeffs: ComplexArray) -> ComplexArray:
    if coeffs.shape[0] <= 1:
        return np.zeros(0, dtype=np.complex128)
    row = coeffs.reshape(1, -1)
    eig = np.linalg.eigvals(_companion(row))
    return _polish(row, eig)[0]


def _cluster(roots: ComplexArray) -> list[tuple[complex, int]]:
    clusters: list[list[complex]] = []
    for root in sorted(roots.tolist(), key=lambda c: (c.real, c.imag)):
        for members in clusters:
            center = complex(np.mean(members))
            if abs(root - center) <= ROOT_CLUSTER_RELATIVE * (1.0 + abs(center)):
                members.append(root)
                break
        else:
            clusters.append([root])
    return [(complex(np.mean(members)), len(members)) for members in clusters]


def poly_roots(q: UniPoly) -> list[tuple[complex, int]]:
    """Roots of ``q`` with multiplicities.

    Companion-matrix eigenvalues, Newton polishing, then clustering within
    ``1e-6 * (1 + |root|)`` to detect multiple roots.

    Raises:
        ZeroPolynomialError: If ``q`` is identically zero
    """
    if q.is_zero:
        raise ZeroPolynomialError()
    roots = _raw_roots(q.as_array())
    return _cluster(roots)


def batch_roots(coeffs: npt.ArrayLike) -> list[ComplexArray]:
    """Roots (repeated by multiplicity) of many univariate polynomials at once.

    Rows whose leading coefficient is negligible relative to the row are
    trimmed and solved individually; their lost roots lie at infinity.

    Raises:
        LineInSurfaceError: If a row is identically zero
    """
    rows = np.asarray(coeffs, dtype=np.complex128)
    if rows.ndim != 2:
        raise DimensionError(expected=2, actual=rows.ndim)
    scale = np.max(np.abs(rows), axis=1)
    if np.any(scale == 0):
        raise LineInSurfaceError()
    results: list[ComplexArray] = [np.zeros(0, dtype=np.complex128)] * rows.shape[0]
    if rows.shape[1] <= 1:
        return results

    regular = np.abs(rows[:, -1]) > COEFFICIENT_TRIM_RELATIVE * scale
    regular_idx = np.nonzero(regular)[0]
    if regular_idx.size:
        sub = rows[regular_idx]
        eig = np.linalg.eigvals(_companion(sub))
        polished = _polish(sub, eig)
        for k, idx in enumerate(regular_idx):
            results[int(idx)] = polished[k]
    for idx in np.nonzero(~regular)[0]:
        trimmed = _trim(rows[idx])
        results[int(idx)] = _raw_roots(trimmed)
    if np.any(~regular):
        logger.debug("solved %d degree-deficient slices individually", int(np.sum(~regular)))
    return results


def generalized_eigh(
    A: npt.ArrayLike, B: npt.ArrayLike
) -> tuple[RealArray, ComplexArray]:
    """Solve the Hermitian pencil ``A x = lambda B x`` with ``B`` positive definite.

    ``B`` is whitened by its Cholesky factor ``B = L L^*`` and the reduced
    matrix ``L^{-1} A L^{-*}`` diagonalized. Eigenvalues ascend; columns of
    the returned matrix are ``B``-normalized eigenvectors.

    Raises:
        IndefiniteDenominatorError: If the smallest eigenvalue of ``B`` is at
            most ``1e-10``
    """
    a = np.asarray(A, dtype=np.complex128)
    b = np.asarray(B, dtype=np.complex128)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionError(expected=b.shape[0], actual=a.shape[0])
    a = 0.5 * (a + a.conj().T)
    b = 0.5 * (b + b.conj().T)
    smallest = float(np.linalg.eigvalsh(b)[0])
    if smallest <= PENCIL_DEFINITENESS_FLOOR:
        raise IndefiniteDenominatorError(smallest)

    lower = scipy.linalg.cholesky(b, lower=True)
    half = scipy.linalg.solve_triangular(lower, a, lower=True)
    reduced = scipy.linalg.solve_triangular(lower, half.conj().T, lower=True)
    reduced = 0.5 * (reduced + reduced.conj().T)
    evals, evecs_std = scipy.linalg.eigh(reduced)
    evecs = scipy.linalg.solve_triangular(lower.conj().T, evecs_std, lower=False)
    return np.asarray(evals, dtype=np.float64), np.asarray(evecs, dtype=np.complex128)


def max_gen_eig(A: HermitianForm, B: HermitianForm) -> tuple[float, ComplexVector]:
    """Largest value of ``A(v, v) / B(v, v)`` and a maximizing unit direction.

    The pairing ``H(v, v) = sum H_ij v_i conj(v_j)`` equals ``x^* H x`` for
    ``x = conj(v)``, so the maximizer is the conjugate of the top eigenvector.

    Raises:
        IndefiniteDenominatorError: If ``B`` is not positive definite
    """
    if A.n != B.n:
        raise DimensionError(expected=B.n, actual=A.n)
    evals, evecs = generalized_eigh(A.matrix, B.matrix)
    direction = evecs[:, -1].conj()
    direction = direction / np.linalg.norm(direction)
    return float(evals[-1]), direction


def random_unitary(n: int, rng: np.random.Generator) -> ComplexArray:
    """Haar-distributed unitary matrix (QR of a complex Gaussian, phase-fixed)."""
    gaussian = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(gaussian)
    phases = np.diag(r) / np.abs(np.diag(r))
    return np.asarray(q * phases, dtype=np.complex128)
