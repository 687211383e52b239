"""Numerical conventions and default tolerances for fockdens.

NOTE: Package version is NOT defined here. It is retrieved dynamically using
importlib.metadata.
"""

import math

# Mass of the Lebesgue ball-mean of d^2 log|T| / dz dzbar carried by one simple
# zero in C. Calibrated by the mollified-Laplacian oracle (see docs/conventions.md).
LELONG_FACTOR = math.pi / 2

# Real Laplacian of log|T| is this multiple of surface measure on W.
LAPLACIAN_MASS = 4 * LELONG_FACTOR

# Linear algebra
HERMITIAN_TOLERANCE = 1e-12
PENCIL_DEFINITENESS_FLOOR = 1e-10

# Root finding
ROOT_CLUSTER_RELATIVE = 1e-6
COEFFICIENT_TRIM_RELATIVE = 1e-13
NEWTON_POLISH_STEPS = 3

# Hypersurface geometry
SURFACE_RESIDUAL_TOLERANCE = 1e-8
FOOT_POINT_TOLERANCE = 1e-10
FOOT_POINT_MAX_ITERATIONS = 100
SEARCH_RADIUS_FACTOR = 10.0
BOUNDARY_BAND = 1e-8
ON_SURFACE_TOLERANCE = 1e-10

# Monte Carlo defaults
DEFAULT_SEED = 42
DEFAULT_BUDGET = 2000
DEFAULT_BATCHES = 16
RADIAL_STRATA = 16
INNER_DIRECTIONS = 2048
FLATNESS_MIN_BUDGET = 100

# Fock-space truncation
DEFAULT_LEAK_TOLERANCE = 1e-6

# Reports
REPORT_FORMAT_VERSION = "1.0.0"
SUPPORTED_COMMANDS = [
    "density",
    "density-scan",
    "singularity",
    "flatness",
    "sampling-ratio",
    "extend",
    "jensen",
    "product-check",
    "seq-density",
]

# Exit codes
EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
