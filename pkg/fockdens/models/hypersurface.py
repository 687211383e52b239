"""Hypersurface and surface-sample value types."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from fockdens.exceptions import DimensionError, InvalidParameterError
from fockdens.models.algebra import ComplexArray, ComplexVector, MultiPoly, RealArray, as_points


@dataclass(frozen=True, eq=False)
class Hypersurface:
    """Zero set ``W`` of ``T``, optionally presented through a gauge ``c e^{h} T``.

    The gauge changes the defining function but not ``W``; invariants that
    are independent of the choice of ``T`` are checked against it.
    """

    T: MultiPoly
    gradient_floor: float = 1e-8
    gauge_scale: complex = 1.0
    gauge_exponent: MultiPoly | None = None

    def __post_init__(self) -> None:
        if self.T.is_zero:
            raise InvalidParameterError("T", 0, "defining polynomial must not vanish identically")
        if self.gradient_floor <= 0:
            raise InvalidParameterError("gradient_floor", self.gradient_floor, "must be > 0")
        if self.gauge_scale == 0:
            raise InvalidParameterError("gauge_scale", self.gauge_scale, "must be nonzero")
        if self.gauge_exponent is not None and self.gauge_exponent.n != self.T.n:
            raise DimensionError(expected=self.T.n, actual=self.gauge_exponent.n)

    @property
    def n(self) -> int:
        return self.T.n

    @property
    def is_gauged(self) -> bool:
        return self.gauge_scale != 1.0 or (
            self.gauge_exponent is not None and not self.gauge_exponent.is_zero
        )

    def with_gauge(self, scale: complex, exponent: MultiPoly | None = None) -> Hypersurface:
        return Hypersurface(self.T, self.gradient_floor, scale, exponent)

    def _gauge(self, pts: ComplexArray) -> ComplexArray:
        factor = np.full(pts.shape[0], self.gauge_scale, dtype=np.complex128)
        if self.gauge_exponent is not None and not self.gauge_exponent.is_zero:
            factor = factor * np.exp(self.gauge_exponent(pts))
        return factor

    def values(self, points: npt.ArrayLike) -> ComplexArray:
        """Defining function ``c e^{h} T`` at a stack of points."""
        pts = as_points(points, self.n)
        values = self.T(pts)
        if not self.is_gauged:
            return values
        return self._gauge(pts) * values

    def gradients(self, points: npt.ArrayLike) -> ComplexArray:
        """Holomorphic gradient of the defining function, shape ``(m, n)``."""
        pts = as_points(points, self.n)
        grad = self.T.gradient(pts)
        if not self.is_gauged:
            return grad
        factor = self._gauge(pts)[:, None]
        if self.gauge_exponent is None or self.gauge_exponent.is_zero:
            return factor * grad
        return factor * (grad + self.T(pts)[:, None] * self.gauge_exponent.gradient(pts))

    def log_abs(self, points: npt.ArrayLike) -> RealArray:
        """``log |c e^{h} T|``, with ``-inf`` on ``W``."""
        with np.errstate(divide="ignore"):
            return np.asarray(np.log(np.abs(self.values(points))), dtype=np.float64)


@dataclass(frozen=True)
class SurfaceSample:
    """One weighted point of ``W`` with its unit normal ``conj(grad T) / |grad T|``."""

    point: ComplexVector
    unit_normal: ComplexVector
    area_weight: float
    batch: int = 0


@dataclass(frozen=True, eq=False)
class SurfaceSampleSet:
    """Weighted surface samples stored column-wise.

    ``points``/``normals`` have shape ``(m, n)``; ``weights`` and ``batches``
    have shape ``(m,)``. ``batch_count`` is the number of independent batches
    the estimator used, so per-batch sums give the Monte Carlo error.
    """

    points: ComplexArray
    normals: ComplexArray
    weights: RealArray
    batches: npt.NDArray[np.int64]
    batch_count: int
    center: ComplexVector
    radius: float
    boundary_band: float = 0.0
    gradient_norms: RealArray = field(default_factory=lambda: np.zeros(0))

    def __len__(self) -> int:
        return int(self.weights.shape[0])

    def __iter__(self) -> Iterator[SurfaceSample]:
        for k in range(len(self)):
            yield SurfaceSample(
                point=self.points[k],
                unit_normal=self.normals[k],
                area_weight=float(self.weights[k]),
                batch=int(self.batches[k]),
            )

    @property
    def is_empty(self) -> bool:
        return len(self) == 0

    def total_area(self) -> float:
        return float(np.sum(self.weights))

    def batch_sums(self, values: npt.ArrayLike | None = None) -> npt.NDArray[np.float64]:
        """Per-batch sums of ``weight * value`` (``value = 1`` by default).

        Each batch sum is scaled by ``batch_count`` so it is an unbiased
        estimate on its own; the overall estimate is their mean.
        """
        data = self.weights if values is None else self.weights * np.asarray(values)
        sums = np.zeros(self.batch_count, dtype=np.result_type(data, np.float64))
        np.add.at(sums, self.batches, data)
        return np.asarray(sums * self.batch_count)

    def std_error(self, values: npt.ArrayLike | None = None) -> float:
        """Standard error of ``sum(weight * value)`` from the batch spread."""
        if self.batch_count < 2:
            return 0.0
        sums = self.batch_sums(values)
        return float(np.std(sums, ddof=1) / np.sqrt(self.batch_count))
