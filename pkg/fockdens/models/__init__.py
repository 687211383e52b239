"""Value types and reports for fockdens."""

from fockdens.models.algebra import HermitianForm, MultiPoly, UniPoly
from fockdens.models.config import Settings
from fockdens.models.fock import FockBasis
from fockdens.models.hypersurface import Hypersurface, SurfaceSample, SurfaceSampleSet
from fockdens.models.reports import (
    ComparabilityReport,
    CriterionReport,
    DensityReport,
    DensityTrend,
    ExtensionReport,
    FlatnessReport,
    JensenIdentityReport,
    JensenReport,
    Monotonicity,
    PointBoundReport,
    RestrictionReport,
    Route,
    SamplingRatioReport,
    ScanReport,
    SeqDensityReport,
    SingularityValue,
    Verdict,
)
from fockdens.models.scene import Scene
from fockdens.models.sequence import ProductSequence, Sequence1D
from fockdens.models.weight import Weight, WeightKind

__all__ = [
    "HermitianForm",
    "UniPoly",
    "MultiPoly",
    "Weight",
    "WeightKind",
    "Hypersurface",
    "SurfaceSample",
    "SurfaceSampleSet",
    "FockBasis",
    "Sequence1D",
    "ProductSequence",
    "Scene",
    "Settings",
    "ComparabilityReport",
    "FlatnessReport",
    "DensityReport",
    "DensityTrend",
    "Monotonicity",
    "ScanReport",
    "Route",
    "SingularityValue",
    "SamplingRatioReport",
    "ExtensionReport",
    "JensenReport",
    "JensenIdentityReport",
    "SeqDensityReport",
    "Verdict",
    "CriterionReport",
    "RestrictionReport",
    "PointBoundReport",
]
