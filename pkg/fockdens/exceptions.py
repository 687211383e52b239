"""Exception hierarchy for fockdens."""

from fockdens.constants import EXIT_NUMERICAL, EXIT_VALIDATION


class FockDensError(Exception):
    """Base exception for fockdens."""

    exit_code = EXIT_NUMERICAL


class ValidationFailure(FockDensError):
    """Base for input problems (CLI exit code 2)."""

    exit_code = EXIT_VALIDATION


class NumericalFailure(FockDensError):
    """Base for numerical failures (CLI exit code 3)."""

    exit_code = EXIT_NUMERICAL


class DimensionError(ValidationFailure):
    """Dimension mismatch between a point and a polynomial or form."""

    def __init__(self, expected: int, actual: int):
        """Initialize DimensionError.

        Args:
            expected: Ambient dimension declared by the object
            actual: Dimension of the offending argument
        """
        self.expected = expected
        self.actual = actual
        super().__init__(f"dimension mismatch: expected {expected}, got {actual}")


class DegenerateDirectionError(ValidationFailure):
    """A line direction is the zero vector."""

    def __init__(self) -> None:
        """Initialize DegenerateDirectionError."""
        super().__init__("degenerate direction: v must be nonzero")


class InvalidParameterError(ValidationFailure):
    """A scalar parameter is out of range."""

    def __init__(self, name: str, value: object, requirement: str):
        """Initialize InvalidParameterError.

        Args:
            name: Parameter name
            value: Offending value
            requirement: Human-readable constraint
        """
        self.name = name
        self.value = value
        self.requirement = requirement
        super().__init__(f"invalid {name}={value!r}: {requirement}")


class WeightError(ValidationFailure):
    """Weight unusable for the requested computation."""

    def __init__(self, reason: str):
        """Initialize WeightError.

        Args:
            reason: Why the weight was rejected
        """
        self.reason = reason
        super().__init__(reason)


class SceneValidationError(ValidationFailure):
    """Scene file cannot be parsed or validated."""

    def __init__(self, field: str, details: str):
        """Initialize SceneValidationError.

        Args:
            field: Dotted path of the offending field
            details: Validation message
        """
        self.field = field
        self.details = details
        super().__init__(f"scene field '{field}': {details}")


class ZeroPolynomialError(NumericalFailure):
    """Root finding requested on the zero polynomial."""

    def __init__(self) -> None:
        """Initialize ZeroPolynomialError."""
        super().__init__("zero polynomial has no finite root multiset")


class LineInSurfaceError(NumericalFailure):
    """A slicing line lies inside the hypersurface."""

    def __init__(self) -> None:
        """Initialize LineInSurfaceError."""
        super().__init__("line contained in W: restricted polynomial is identically zero")


class IndefiniteDenominatorError(NumericalFailure):
    """Denominator of a Hermitian pencil is not positive definite."""

    def __init__(self, smallest_eigenvalue: float):
        """Initialize IndefiniteDenominatorError.

        Args:
            smallest_eigenvalue: Smallest eigenvalue found for the denominator
        """
        self.smallest_eigenvalue = smallest_eigenvalue
        super().__init__(
            f"indefinite denominator: smallest eigenvalue {smallest_eigenvalue:.3e}"
        )


class SingularGradientError(NumericalFailure):
    """Gradient of the defining function vanished during a Newton iteration."""

    def __init__(self, point: object):
        """Initialize SingularGradientError.

        Args:
            point: Iterate at which the gradient vanished
        """
        self.point = point
        super().__init__(f"singular gradient at {point}")


class EmptyRegionError(NumericalFailure):
    """No surface points were found in the requested region."""

    def __init__(self, center: object, radius: float):
        """Initialize EmptyRegionError.

        Args:
            center: Region center
            radius: Region radius
        """
        self.center = center
        self.radius = radius
        super().__init__(f"empty region: no surface points in B({center}, {radius})")


class QuadratureError(NumericalFailure):
    """A Monte Carlo partial result violated its analytic guard."""

    def __init__(self, quantity: str, value: float, cap: float):
        """Initialize QuadratureError.

        Args:
            quantity: Name of the guarded quantity
            value: Computed value
            cap: Analytic bound that was exceeded
        """
        self.quantity = quantity
        self.value = value
        self.cap = cap
        super().__init__(f"quadrature failure: {quantity}={value:.6e} exceeds cap {cap:.6e}")


class TruncationError(NumericalFailure):
    """Window/degree truncation is not trustworthy."""

    def __init__(self, message: str):
        """Initialize TruncationError.

        Args:
            message: Description of the truncation problem
        """
        self.message = message
        super().__init__(message)


class UnderdeterminedError(NumericalFailure):
    """Least-squares extension has fewer samples than unknowns and no regularization."""

    def __init__(self, samples: int, unknowns: int):
        """Initialize UnderdeterminedError.

        Args:
            samples: Number of value samples
            unknowns: Number of basis coefficients
        """
        self.samples = samples
        self.unknowns = unknowns
        super().__init__(
            f"regularize or reduce degree: {samples} samples for {unknowns} unknowns"
        )
