"""fockdens: density invariants and sampling diagnostics for Bargmann-Fock spaces."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("fockdens")
except PackageNotFoundError as e:
    raise PackageNotFoundError(
        "Package 'fockdens' not found. "
        "Please ensure it is properly installed: "
        "uv pip install fockdens"
    ) from e

# Public API
from fockdens.models import (
    HermitianForm,
    Hypersurface,
    MultiPoly,
    ProductSequence,
    Sequence1D,
    UniPoly,
    Weight,
)
from fockdens.services.density import density_at, density_scan, upsilon
from fockdens.services.exporters import export_json
from fockdens.services.focknum import (
    jensen_ratio,
    min_norm_extension,
    sampling_ratio_bounds,
)
from fockdens.services.scene_loader import build_scene, parse_scene
from fockdens.services.sequences import product_interp_check, product_samp_check
from fockdens.services.singularity import s_r_logT, s_r_newton

__all__ = [
    "__version__",
    # Value types
    "HermitianForm",
    "UniPoly",
    "MultiPoly",
    "Weight",
    "Hypersurface",
    "Sequence1D",
    "ProductSequence",
    # Scenes
    "parse_scene",
    "build_scene",
    # Density and singularity
    "upsilon",
    "density_at",
    "density_scan",
    "s_r_newton",
    "s_r_logT",
    # Fock-space numerics
    "sampling_ratio_bounds",
    "min_norm_extension",
    "jensen_ratio",
    # Sequences
    "product_interp_check",
    "product_samp_check",
    # Export
    "export_json",
]
