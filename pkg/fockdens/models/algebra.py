"""Complex linear-algebra and polynomial value types."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import numpy.typing as npt

from fockdens.constants import HERMITIAN_TOLERANCE
from fockdens.exceptions import DimensionError, InvalidParameterError

ComplexVector = npt.NDArray[np.complex128]
ComplexArray = npt.NDArray[np.complex128]
RealArray = npt.NDArray[np.float64]
MultiIndex = tuple[int, ...]


def as_vector(z: Sequence[complex] | npt.ArrayLike, n: int | None = None) -> ComplexVector:
    """Coerce ``z`` to a finite complex vector, optionally checking its length.

    Raises:
        DimensionError: If ``n`` is given and the length differs
        InvalidParameterError: If an entry is NaN or infinite
    """
    vec = np.asarray(z, dtype=np.complex128).reshape(-1)
    if n is not None and vec.shape[0] != n:
        raise DimensionError(expected=n, actual=vec.shape[0])
    if not np.all(np.isfinite(vec)):
        raise InvalidParameterError("z", vec.tolist(), "entries must be finite")
    return vec


def as_points(points: npt.ArrayLike, n: int) -> ComplexArray:
    """Coerce a single point or a stack of points to shape ``(m, n)``."""
    arr = np.asarray(points, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.shape[-1] != n:
        raise DimensionError(expected=n, actual=arr.shape[-1])
    return arr


@dataclass(frozen=True, eq=False)
class HermitianForm:
    """Hermitian (1,1)-form with pairing ``H(v, v) = sum H_ij v_i conj(v_j)``."""

    matrix: ComplexArray

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionError(expected=mat.shape[0], actual=mat.shape[-1])
        mat = 0.5 * (mat + mat.conj().T)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def identity(cls, n: int) -> HermitianForm:
        return cls(np.eye(n, dtype=np.complex128))

    @classmethod
    def zero(cls, n: int) -> HermitianForm:
        return cls(np.zeros((n, n), dtype=np.complex128))

    @classmethod
    def diagonal(cls, values: Sequence[float]) -> HermitianForm:
        return cls(np.diag(np.asarray(values, dtype=np.complex128)))

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])

    def pair(self, v: npt.ArrayLike) -> float:
        """Evaluate ``H(v, v)``; the imaginary part is zero up to rounding."""
        vec = as_vector(v, self.n)
        value = complex(vec @ self.matrix @ vec.conj())
        return value.real

    def sesquilinear(self, x: npt.ArrayLike, y: npt.ArrayLike) -> complex:
        """Evaluate ``H(x, y) = sum H_ij x_i conj(y_j)``."""
        return complex(as_vector(x, self.n) @ self.matrix @ as_vector(y, self.n).conj())

    def eigenvalues(self) -> RealArray:
        """Eigenvalues in ascending order."""
        return np.linalg.eigvalsh(self.matrix)

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def __add__(self, other: HermitianForm) -> HermitianForm:
        return HermitianForm(self.matrix + other.matrix)

    def __sub__(self, other: HermitianForm) -> HermitianForm:
        return HermitianForm(self.matrix - other.matrix)

    def scaled(self, factor: float) -> HermitianForm:
        return HermitianForm(factor * self.matrix)

    def congruent(self, u: npt.ArrayLike) -> HermitianForm:
        """Return the matrix ``U^T H conj(U)`` of the form in coordinates ``z = U w``."""
        mat = np.asarray(u, dtype=np.complex128)
        return HermitianForm(mat.T @ self.matrix @ mat.conj())


def is_hermitian_matrix(matrix: npt.ArrayLike, tolerance: float = HERMITIAN_TOLERANCE) -> bool:
    """Whether ``matrix`` equals its conjugate transpose within ``tolerance``."""
    mat = np.asarray(matrix, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        return False
    scale = max(1.0, float(np.max(np.abs(mat))) if mat.size else 1.0)
    return bool(np.max(np.abs(mat - mat.conj().T), initial=0.0) <= tolerance * scale)


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial, coefficients in ascending degree."""

    coefficients: tuple[complex, ...]

    def __post_init__(self) -> None:
        coeffs = [complex(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_roots(cls, roots: Iterable[complex], leading: complex = 1.0) -> UniPoly:
        coeffs = np.polynomial.polynomial.polyfromroots(list(roots)) * leading
        return cls(tuple(complex(c) for c in np.atleast_1d(coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def as_array(self) -> ComplexArray:
        return np.asarray(self.coefficients, dtype=np.complex128)

    def __call__(self, t: npt.ArrayLike) -> ComplexArray:
        if self.is_zero:
            return np.zeros_like(np.asarray(t, dtype=np.complex128))
        return np.asarray(
            np.polynomial.polynomial.polyval(np.asarray(t, dtype=np.complex128), self.as_array()),
            dtype=np.complex128,
        )


@dataclass(frozen=True)
class MultiPoly:
    """Sparse polynomial in ``n`` complex variables.

    Terms are stored sorted lexicographically by multi-index with zero
    coefficients removed.
    """

    n: int
    terms: tuple[tuple[MultiIndex, complex], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidParameterError("n", self.n, "ambient dimension must be >= 1")
        merged: dict[MultiIndex, complex] = {}
        for alpha, coeff in self.terms:
            key = tuple(int(a) for a in alpha)
            if len(key) != self.n:
                raise DimensionError(expected=self.n, actual=len(key))
            if any(a < 0 for a in key):
                raise InvalidParameterError("multi-index", key, "entries must be non-negative")
            merged[key] = merged.get(key, 0j) + complex(coeff)
        cleaned = tuple(sorted((k, v) for k, v in merged.items() if v != 0))
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def from_dict(cls, n: int, terms: Mapping[MultiIndex, complex]) -> MultiPoly:
        return cls(n, tuple(terms.items()))

    @classmethod
    def constant(cls, n: int, value: complex) -> MultiPoly:
        return cls(n, (((0,) * n, value),))

    @classmethod
    def coordinate(cls, n: int, i: int) -> MultiPoly:
        """The linear monomial ``z_i`` (0-based index)."""
        alpha = tuple(1 if k == i else 0 for k in range(n))
        return cls(n, ((alpha, 1.0),))

    @classmethod
    def linear(cls, a: Sequence[complex], b: complex = 0.0) -> MultiPoly:
        """The affine polynomial ``sum a_i z_i - b``."""
        n = len(a)
        terms: list[tuple[MultiIndex, complex]] = [((0,) * n, -complex(b))]
        for i, coeff in enumerate(a):
            terms.append((tuple(1 if k == i else 0 for k in range(n)), complex(coeff)))
        return cls(n, tuple(terms))

    @classmethod
    def from_roots_in_variable(cls, n: int, i: int, roots: Iterable[complex]) -> MultiPoly:
        """The product ``prod_k (z_i - root_k)`` viewed in ``n`` variables."""
        result = cls.constant(n, 1.0)
        z_i = cls.coordinate(n, i)
        for root in roots:
            result = result * (z_i - cls.constant(n, root))
        return result

    def as_dict(self) -> dict[MultiIndex, complex]:
        return dict(self.terms)

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(alpha) for alpha, _ in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @cached_property
    def _exponents(self) -> npt.NDArray[np.int64]:
        return np.array([alpha for alpha, _ in self.terms], dtype=np.int64).reshape(-1, self.n)

    @cached_property
    def _coefficients(self) -> ComplexArray:
        return np.array([c for _, c in self.terms], dtype=np.complex128)

    @cached_property
    def partials(self) -> tuple[MultiPoly, ...]:
        return tuple(self.derivative(i) for i in range(self.n))

    def derivative(self, i: int) -> MultiPoly:
        """Holomorphic partial derivative with respect to ``z_i``."""
        terms = []
        for alpha, coeff in self.terms:
            if alpha[i] == 0:
                continue
            lowered = tuple(a - 1 if k == i else a for k, a in enumerate(alpha))
            terms.append((lowered, coeff * alpha[i]))
        return MultiPoly(self.n, tuple(terms))

    def homogeneous_part(self, degree: int) -> MultiPoly:
        return MultiPoly(self.n, tuple((a, c) for a, c in self.terms if sum(a) == degree))

    def __call__(self, points: npt.ArrayLike) -> ComplexArray:
        """Evaluate at one point (returns shape ``(1,)``) or a stack ``(m, n)``."""
        pts = as_points(points, self.n)
        if self.is_zero:
            return np.zeros(pts.shape[0], dtype=np.complex128)
        max_power = int(self._exponents.max())
        table = np.ones((max_power + 1, *pts.shape), dtype=np.complex128)
        for d in range(1, max_power + 1):
            table[d] = table[d - 1] * pts
        cols = np.arange(self.n)
        # monomials[m, k] = prod_i pts[m, i] ** exponents[k, i]
        monomials = np.prod(table[self._exponents, :, cols].transpose(2, 0, 1), axis=2)
        return np.asarray(monomials @ self._coefficients, dtype=np.complex128)

    def gradient(self, points: npt.ArrayLike) -> ComplexArray:
        """Holomorphic gradient at a stack of points, shape ``(m, n)``."""
        pts = as_points(points, self.n)
        return np.stack([d(pts) for d in self.partials], axis=1)

    def hessian(self, point: npt.ArrayLike) -> ComplexArray:
        """Holomorphic Hessian ``d^2 p / dz_i dz_j`` at a single point."""
        pts = as_points(point, self.n)
        rows = [self.partials[i].gradient(pts)[0] for i in range(self.n)]
        return np.stack(rows, axis=0)

    def __add__(self, other: MultiPoly) -> MultiPoly:
        self._check_same_space(other)
        return MultiPoly(self.n, self.terms + other.terms)

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + other.scaled(-1.0)

    def __mul__(self, other: MultiPoly) -> MultiPoly:
        self._check_same_space(other)
        terms: list[tuple[MultiIndex, complex]] = []
        for a, ca in self.terms:
            for b, cb in other.terms:
                terms.append((tuple(x + y for x, y in zip(a, b, strict=True)), ca * cb))
        return MultiPoly(self.n, tuple(terms))

    def scaled(self, factor: complex) -> MultiPoly:
        return MultiPoly(self.n, tuple((a, c * factor) for a, c in self.terms))

    def compose_linear(self, u: npt.ArrayLike) -> MultiPoly:
        """Return ``w -> p(U w)`` for an ``n x n`` matrix ``U``."""
        mat = np.asarray(u, dtype=np.complex128)
        images = [
            MultiPoly(self.n, tuple((tuple(1 if k == j else 0 for k in range(self.n)), mat[i, j])
                                    for j in range(self.n)))
            for i in range(self.n)
        ]
        result = MultiPoly(self.n)
        for alpha, coeff in self.terms:
            term = MultiPoly.constant(self.n, coeff)
            for i, power in enumerate(alpha):
                for _ in range(power):
                    term = term * images[i]
            result = result + term
        return result

    def _check_same_space(self, other: MultiPoly) -> None:
        if other.n != self.n:
            raise DimensionError(expected=self.n, actual=other.n)
