"""Truncated orthonormal monomial basis of a quadratic-weight Fock space."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from fockdens.models.algebra import ComplexArray, MultiIndex, RealArray, as_points
from fockdens.models.weight import Weight


@dataclass(frozen=True, eq=False)
class FockBasis:
    """Normalized monomials ``e_a = e^{2h} w^a / ||w^a||`` in diagonal coordinates.

    ``w = U^T z`` turns the quadratic part of ``phi`` into
    ``sum lambda_k |w_k|^2``; ``log_norms2[j]`` is ``log ||w^a||^2`` for the
    ``j``-th multi-index under ``int |.|^2 e^{-2 phi} dLebesgue``.
    """

    weight: Weight
    degree: int
    multi_indices: tuple[MultiIndex, ...]
    eigenvalues: RealArray
    unitary: ComplexArray
    log_norms2: RealArray

    @property
    def n(self) -> int:
        return self.weight.n

    @property
    def size(self) -> int:
        return len(self.multi_indices)

    @property
    def norms(self) -> RealArray:
        """Monomial norms (not squared)."""
        return np.asarray(np.exp(0.5 * self.log_norms2))

    @property
    def is_isotropic(self) -> bool:
        return bool(np.ptp(self.eigenvalues) <= 1e-12 * float(np.max(self.eigenvalues)))

    def index_of(self, alpha: MultiIndex) -> int:
        return self.multi_indices.index(tuple(alpha))

    def diagonal_coordinates(self, points: npt.ArrayLike) -> ComplexArray:
        return np.asarray(as_points(points, self.n) @ self.unitary, dtype=np.complex128)

    def _exponents(self) -> npt.NDArray[np.int64]:
        return np.array(self.multi_indices, dtype=np.int64).reshape(-1, self.n)

    def weighted_values(self, points: npt.ArrayLike) -> ComplexArray:
        """``e_a(z) e^{-phi(z)}`` for every point and basis element, shape ``(m, K)``.

        Computed in log space; the gauge ``e^{2h}`` leaves only the phase
        ``e^{2i Im h}`` here.
        """
        pts = as_points(points, self.n)
        w = self.diagonal_coordinates(pts)
        exps = self._exponents()
        with np.errstate(divide="ignore", invalid="ignore"):
            log_abs = np.log(np.abs(w))
            terms = np.where(exps[None, :, :] == 0, 0.0, exps[None, :, :] * log_abs[:, None, :])
        q = np.sum(self.eigenvalues * np.abs(w) ** 2, axis=1)
        log_mag = terms.sum(axis=2) - q[:, None] - 0.5 * self.log_norms2[None, :]
        phase = np.exp(1j * (np.angle(w) @ exps.T))
        values = np.exp(log_mag) * phase
        if not self.weight.pluriharmonic.is_zero:
            values = values * np.exp(2j * self.weight.pluriharmonic(pts).imag)[:, None]
        return np.asarray(values, dtype=np.complex128)

    def values(self, points: npt.ArrayLike) -> ComplexArray:
        """Unweighted ``e_a(z)``, shape ``(m, K)``."""
        pts = as_points(points, self.n)
        return np.asarray(
            self.weighted_values(pts) * np.exp(self.weight.value(pts))[:, None],
            dtype=np.complex128,
        )
