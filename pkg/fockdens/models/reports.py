"""Report models returned by the analysis services."""

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from fockdens.models.algebra import HermitianForm, MultiIndex

_REPORT_CONFIG = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class ComparabilityReport(BaseModel):
    """Constants ``C``, ``C'`` with ``C omega <= i ddbar phi <= C' omega`` on a region."""

    model_config = _REPORT_CONFIG

    c_lower: float = Field(..., description="Smallest Levi eigenvalue seen")
    c_upper: float = Field(..., description="Largest Levi eigenvalue seen")
    sample_count: int = Field(..., description="Number of region points inspected")

    @model_validator(mode="after")
    def validate_order(self) -> "ComparabilityReport":
        """Validate 0 < c_lower <= c_upper."""
        if not 0 < self.c_lower <= self.c_upper:
            raise ValueError("comparability constants must satisfy 0 < c_lower <= c_upper")
        return self


class FlatnessReport(BaseModel):
    """Sampled (heuristic) uniform-flatness certificate for a region of W."""

    model_config = _REPORT_CONFIG

    region_center: list[complex] = Field(..., description="Region center")
    region_radius: float = Field(..., description="Region radius")
    epsilon_estimate: float = Field(..., description="Estimated tubular radius")
    max_graph_constant: float = Field(..., description="Largest C in |f(x)| <= C|x|^2")
    min_normal_injectivity: float = Field(
        ..., description="Smallest normal-segment length at which two samples collide"
    )
    samples: int = Field(..., description="Surface samples used")
    heuristic: bool = Field(True, description="Always true: sampled, not proven")

    @field_validator("epsilon_estimate", "max_graph_constant", "min_normal_injectivity")
    @classmethod
    def validate_non_negative(cls, v: float) -> float:
        """Validate finite non-negative values."""
        if not math.isfinite(v) or v < 0:
            raise ValueError("flatness quantities must be finite and non-negative")
        return v


class DensityReport(BaseModel):
    """Directional density ``D(W, z, r)`` at one center and radius."""

    model_config = _REPORT_CONFIG

    center: list[complex] = Field(..., description="Ball center z")
    radius: float = Field(..., description="Ball radius r")
    upsilon: HermitianForm = Field(..., description="Ball average of the current of W")
    levi_r: HermitianForm = Field(..., description="Levi form of the mollified weight")
    density: float = Field(..., description="Largest generalized eigenvalue")
    max_direction: list[complex] = Field(..., description="Maximizing unit direction")
    mc_std_error: float = Field(..., description="Standard error of density")
    area: float = Field(0.0, description="Estimated area of W in the ball")
    signed_excess: float | None = Field(
        None, description="Largest eigenvalue of upsilon - levi_r"
    )

    @field_validator("density", "mc_std_error")
    @classmethod
    def validate_non_negative(cls, v: float) -> float:
        """Validate non-negative values."""
        if v < 0:
            raise ValueError("density and its error must be non-negative")
        return v


class Monotonicity(str, Enum):
    """Shape of a per-radius sequence."""

    DECREASING = "decreasing"
    INCREASING = "increasing"
    MIXED = "mixed"
    CONSTANT = "constant"


class DensityTrend(BaseModel):
    """Finite-window trend of the per-radius extremes of a scan."""

    model_config = _REPORT_CONFIG

    sup_shape: Monotonicity = Field(..., description="Shape of sup_z over radii")
    inf_shape: Monotonicity = Field(..., description="Shape of inf_z over radii")
    sup_extrapolated: float | None = Field(
        None, description="r^-2 Richardson extrapolation of sup_z from the two largest radii"
    )
    inf_extrapolated: float | None = Field(
        None, description="r^-2 Richardson extrapolation of inf_z from the two largest radii"
    )
    note: str = Field(
        "finite-window estimate of D+/D-, not a limit",
        description="Interpretation caveat",
    )


class ScanReport(BaseModel):
    """Grid of densities over centers and radii."""

    model_config = _REPORT_CONFIG

    radii: list[float] = Field(..., description="Ascending radii")
    cells: list[DensityReport] = Field(..., description="Row-major (center, radius) grid")
    sup_over_z: list[float] = Field(..., description="Upper density estimate per radius")
    inf_over_z: list[float] = Field(..., description="Lower density estimate per radius")
    trend: DensityTrend = Field(..., description="Trend summary")

    @model_validator(mode="after")
    def validate_sup_inf(self) -> "ScanReport":
        """Validate sup >= inf per radius."""
        for sup, inf in zip(self.sup_over_z, self.inf_over_z, strict=True):
            if sup < inf:
                raise ValueError("sup_over_z must dominate inf_over_z")
        return self


class Route(str, Enum):
    """Evaluation route of the singular weight."""

    NEWTON = "newton"
    LOGT = "logT"


class SingularityValue(BaseModel):
    """Value of ``s_r`` at one point.

    Non-positive up to ``quadrature_error`` (a Monte Carlo standard error);
    ``-inf`` on ``W``.
    """

    model_config = _REPORT_CONFIG

    point: list[complex] = Field(..., description="Evaluation point")
    radius: float = Field(..., description="Averaging radius r")
    value: float = Field(..., description="s_r(z) or -inf")
    route: Route = Field(..., description="newton or logT")
    quadrature_error: float = Field(..., description="Monte Carlo standard error")

    @property
    def on_surface(self) -> bool:
        return self.value == -math.inf


class SamplingRatioReport(BaseModel):
    """Extreme generalized eigenvalues ``(m, M)`` of the target and ambient Grams."""

    model_config = _REPORT_CONFIG

    target: str = Field(..., description="Target label")
    lower: float = Field(..., description="Lower frame bound m")
    upper: float = Field(..., description="Upper frame bound M")
    window_radius: float = Field(..., description="Window radius R")
    degree: int = Field(..., description="Truncation degree N")
    conditioning: float = Field(..., description="Condition number of the ambient Gram")
    mass_leak: float = Field(..., description="Top-degree mass outside the window")
    lower_std_error: float = Field(0.0, description="Batch spread of m")
    upper_std_error: float = Field(0.0, description="Batch spread of M")

    @model_validator(mode="after")
    def validate_bounds(self) -> "SamplingRatioReport":
        """Validate 0 <= lower <= upper."""
        if not 0 <= self.lower <= self.upper:
            raise ValueError("frame bounds must satisfy 0 <= lower <= upper")
        return self


class ExtensionReport(BaseModel):
    """Minimum-norm extension of surface data into the truncated space."""

    model_config = _REPORT_CONFIG

    degree: int = Field(..., description="Truncation degree N")
    regularization: float = Field(..., description="Tikhonov parameter")
    coefficients: list[tuple[MultiIndex, complex]] = Field(
        ..., description="Coefficients on normalized monomials"
    )
    residual: float = Field(..., description="Relative weighted fit residual")
    ambient_norm: float = Field(..., description="Ambient norm of the extension")
    surface_norm: float = Field(..., description="Surface norm of the data")
    ratio: float = Field(..., description="(ambient norm)^2 / (surface norm)^2")

    def coefficient(self, alpha: MultiIndex) -> complex:
        for key, value in self.coefficients:
            if key == alpha:
                return value
        return 0j


class JensenReport(BaseModel):
    """Counting side and weight side of the one-dimensional Jensen argument."""

    model_config = _REPORT_CONFIG

    R: float = Field(..., description="Outer radius")
    lhs: float = Field(..., description="Integral of n(0,s)/s over [1, R]")
    rhs: float = Field(..., description="Integral of (weight Laplacian mass)/s over [0, R]")
    ratio: float = Field(..., description="lhs / rhs")
    convention: str = Field("real Laplacian (4 d/dz d/dzbar)", description="Laplacian convention")

    @field_validator("lhs", "rhs")
    @classmethod
    def validate_non_negative(cls, v: float) -> float:
        """Validate non-negative values."""
        if v < 0:
            raise ValueError("Jensen integrals must be non-negative")
        return v


class JensenIdentityReport(BaseModel):
    """Classical Jensen formula check for an explicit polynomial."""

    model_config = _REPORT_CONFIG

    R: float = Field(..., description="Circle radius")
    counting: float = Field(..., description="Sum of log(R/|zero|) over zeros inside")
    boundary_mean: float = Field(..., description="Mean of log|f| on the circle")
    log_abs_at_origin: float = Field(..., description="log|f(0)|")
    gap: float = Field(..., description="boundary_mean - log|f(0)| - counting")


class SeqDensityReport(BaseModel):
    """One-dimensional density of a planar sequence in one disc."""

    model_config = _REPORT_CONFIG

    label: str = Field(..., description="Sequence name")
    center: complex = Field(..., description="Disc center")
    R: float = Field(..., gt=0, description="Disc radius")
    count: int = Field(..., ge=0, description="Points strictly inside the disc")
    density: float = Field(..., ge=0, description="count / int_D Laplacian(phi) dA")


class Verdict(str, Enum):
    """Outcome of a sufficient-condition check."""

    SATISFIED = "satisfied"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


class CriterionReport(BaseModel):
    """Margins of a product-sequence density criterion.

    The criteria are sufficient, not necessary: ``violated`` means the
    sufficient condition fails, not that the sequence fails the property.
    """

    model_config = _REPORT_CONFIG

    mode: str = Field(..., description="interp or samp")
    radius: float = Field(..., description="Radius r of the split-density test")
    epsilon: float = Field(..., description="Density slack epsilon")
    convention: str = Field(
        "real Laplacian (4 d/dz d/dzbar)", description="Convention of lhs/rhs columns"
    )
    grid: list[list[complex]] = Field(..., description="Grid points (z, w)")
    lhs: list[float] = Field(..., description="Left side per grid point")
    rhs: list[float] = Field(..., description="Right side per grid point")
    margins: list[float] = Field(..., description="Signed margins, positive means the test holds")
    lhs_dbar: list[float] = Field(..., description="Left side, d-dbar convention")
    rhs_dbar: list[float] = Field(..., description="Right side, d-dbar convention")
    margins_dbar: list[float] = Field(..., description="Signed margins, d-dbar convention")
    lambda_densities: list[float] = Field(..., description="Worst 1-D density of each fiber")
    lambda_margins: list[float] = Field(..., description="Signed fiber margins")
    min_margin: float = Field(..., description="Smallest margin over grid and fibers")
    max_margin: float = Field(..., description="Largest margin over grid and fibers")
    verdict: Verdict = Field(..., description="Outcome of the sufficient condition")
    wording: str = Field(..., description="Human-readable verdict")


class RestrictionReport(BaseModel):
    """Empirical constant of the tube restriction inequality."""

    model_config = _REPORT_CONFIG

    epsilon: float = Field(..., description="Tube radius")
    window_radius: float = Field(..., description="Window radius R")
    degree: int = Field(..., description="Truncation degree N")
    constant: float = Field(..., description="Smallest tube/surface ratio divided by eps^2")
    std_error: float = Field(..., description="Batch spread of the constant")


class PointBoundReport(BaseModel):
    """Empirical constant of the local point-value bound at a surface point."""

    model_config = _REPORT_CONFIG

    point: list[complex] = Field(..., description="Surface point z")
    epsilon: float = Field(..., description="Averaging radius")
    trials: int = Field(..., description="Random functions tried")
    constants: list[float] = Field(..., description="Per-trial ratio")
    worst: float = Field(..., description="Largest ratio over trials")
