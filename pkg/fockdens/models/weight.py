"""Plurisubharmonic weight value type."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
import numpy.typing as npt

from fockdens.exceptions import DimensionError, WeightError
from fockdens.models.algebra import (
    ComplexArray,
    HermitianForm,
    MultiPoly,
    RealArray,
    as_points,
)


class WeightKind(str, Enum):
    """Supported weight families."""

    EUCLIDEAN = "euclidean"
    QUADRATIC = "quadratic"


@dataclass(frozen=True, eq=False)
class Weight:
    """Quadratic weight ``phi(z) = sum Q_ij z_i conj(z_j) + 2 Re h(z)``.

    ``Q`` is the constant Levi form and ``h`` a holomorphic polynomial, so
    ``2 Re h`` is pluriharmonic. The euclidean kind is ``Q = I``, ``h = 0``.
    """

    kind: WeightKind
    levi: HermitianForm
    pluriharmonic: MultiPoly

    def __post_init__(self) -> None:
        if self.pluriharmonic.n != self.levi.n:
            raise DimensionError(expected=self.levi.n, actual=self.pluriharmonic.n)
        smallest = float(self.levi.eigenvalues()[0])
        if smallest <= 0:
            raise WeightError(
                f"degenerate Levi form: smallest eigenvalue {smallest:.3e} is not positive"
            )

    @classmethod
    def euclidean(cls, n: int) -> Weight:
        return cls(WeightKind.EUCLIDEAN, HermitianForm.identity(n), MultiPoly(n))

    @classmethod
    def from_levi(
        cls, Q: npt.ArrayLike | HermitianForm, h: MultiPoly | None = None
    ) -> Weight:
        """Build a quadratic weight from its Levi matrix and optional pluriharmonic part."""
        form = Q if isinstance(Q, HermitianForm) else HermitianForm(np.asarray(Q))
        return cls(WeightKind.QUADRATIC, form, h if h is not None else MultiPoly(form.n))

    @property
    def n(self) -> int:
        return self.levi.n

    @property
    def Q(self) -> ComplexArray:
        return self.levi.matrix

    @property
    def is_split(self) -> bool:
        """Whether the Levi form has no cross terms."""
        off = self.Q - np.diag(np.diag(self.Q))
        return bool(np.all(np.abs(off) == 0))

    def with_pluriharmonic(self, h: MultiPoly) -> Weight:
        return Weight(WeightKind.QUADRATIC, self.levi, h)

    def value(self, points: npt.ArrayLike) -> RealArray:
        """Evaluate ``phi`` at one point or at a stack of points."""
        pts = as_points(points, self.n)
        quadratic = np.einsum("mi,ij,mj->m", pts, self.Q, pts.conj()).real
        if self.pluriharmonic.is_zero:
            return np.asarray(quadratic, dtype=np.float64)
        return np.asarray(quadratic + 2.0 * self.pluriharmonic(pts).real, dtype=np.float64)

    def gauge_factor(self, points: npt.ArrayLike) -> ComplexArray:
        """Holomorphic factor ``e^{2h}``; ``|F e^{2h}|^2 e^{-2 phi} = |F|^2 e^{-2 q}``.

        ``q`` is the quadratic part of ``phi``.
        """
        pts = as_points(points, self.n)
        if self.pluriharmonic.is_zero:
            return np.ones(pts.shape[0], dtype=np.complex128)
        return np.exp(2.0 * self.pluriharmonic(pts))
