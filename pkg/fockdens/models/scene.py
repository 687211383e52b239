"""Scene file schema.

Complex numbers are ``[re, im]`` pairs and polynomial terms are
``[[a_1, ..., a_n], re, im]`` triples.
"""

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from fockdens.constants import DEFAULT_BUDGET, DEFAULT_LEAK_TOLERANCE, DEFAULT_SEED
from fockdens.models.algebra import HermitianForm, MultiPoly, is_hermitian_matrix
from fockdens.models.hypersurface import Hypersurface
from fockdens.models.sequence import ProductSequence, Sequence1D
from fockdens.models.weight import Weight, WeightKind

_SCENE_CONFIG = ConfigDict(frozen=True, extra="forbid")

ComplexPair = tuple[float, float]
Term = tuple[list[int], float, float]


def _complex(pair: ComplexPair) -> complex:
    return complex(pair[0], pair[1])


def _pair(value: complex) -> ComplexPair:
    return (float(value.real), float(value.imag))


def _poly(n: int, terms: list[Term]) -> MultiPoly:
    return MultiPoly(n, tuple((tuple(alpha), complex(re, im)) for alpha, re, im in terms))


def poly_terms(p: MultiPoly) -> list[Term]:
    """Serialize a polynomial as ``[alpha, re, im]`` triples."""
    return [(list(alpha), float(c.real), float(c.imag)) for alpha, c in p.terms]


class WeightSpec(BaseModel):
    """Quadratic weight ``Q`` plus optional pluriharmonic part ``2 Re h``."""

    model_config = _SCENE_CONFIG

    kind: Literal["euclidean", "quadratic"] = Field("euclidean", description="Weight family")
    Q: list[list[ComplexPair]] | None = Field(None, description="Levi matrix, quadratic kind")
    pluriharmonic: list[Term] = Field(default_factory=list, description="Terms of h")

    @field_validator("Q")
    @classmethod
    def validate_hermitian(
        cls, v: list[list[ComplexPair]] | None
    ) -> list[list[ComplexPair]] | None:
        """Validate that Q is square and Hermitian."""
        if v is None:
            return v
        if any(len(row) != len(v) for row in v):
            raise ValueError("Levi matrix must be square")
        matrix = np.array([[_complex(x) for x in row] for row in v])
        if not is_hermitian_matrix(matrix):
            raise ValueError("Levi matrix is not Hermitian within tolerance")
        smallest = float(np.linalg.eigvalsh(0.5 * (matrix + matrix.conj().T))[0])
        if smallest <= 0:
            raise ValueError(f"degenerate Levi form: smallest eigenvalue {smallest:.3e}")
        return v

    @model_validator(mode="after")
    def validate_kind(self) -> "WeightSpec":
        """Validate that Q is given exactly for the quadratic kind."""
        if self.kind == "quadratic" and self.Q is None:
            raise ValueError("quadratic weight requires Q")
        if self.kind == "euclidean" and self.Q is not None:
            raise ValueError("euclidean weight takes no Q")
        return self

    def build(self, n: int) -> Weight:
        h = _poly(n, self.pluriharmonic)
        if self.Q is None:
            return Weight(WeightKind.EUCLIDEAN, HermitianForm.identity(n), h)
        matrix = np.array([[_complex(x) for x in row] for row in self.Q])
        return Weight.from_levi(matrix, h)

    @classmethod
    def from_weight(cls, w: Weight) -> "WeightSpec":
        if w.kind.value == "euclidean":
            return cls(kind="euclidean", pluriharmonic=poly_terms(w.pluriharmonic))
        return cls(
            kind="quadratic",
            Q=[[_pair(x) for x in row] for row in w.Q],
            pluriharmonic=poly_terms(w.pluriharmonic),
        )


class HypersurfaceSpec(BaseModel):
    """Defining polynomial of ``W``."""

    model_config = _SCENE_CONFIG

    dimension: int = Field(..., description="Number of variables")
    terms: list[Term] = Field(..., min_length=1, description="Terms of T")
    gradient_floor: float = Field(1e-8, description="Smallest admissible |grad T| on W")

    @model_validator(mode="after")
    def validate_terms(self) -> "HypersurfaceSpec":
        """Validate multi-index lengths and a nonzero polynomial."""
        for alpha, _, _ in self.terms:
            if len(alpha) != self.dimension:
                raise ValueError(
                    f"multi-index {alpha} has length {len(alpha)}, expected {self.dimension}"
                )
        if _poly(self.dimension, self.terms).is_zero:
            raise ValueError("defining polynomial must not vanish identically")
        return self

    def build(self) -> Hypersurface:
        return Hypersurface(_poly(self.dimension, self.terms), gradient_floor=self.gradient_floor)

    @classmethod
    def from_hypersurface(cls, H: Hypersurface) -> "HypersurfaceSpec":
        return cls(dimension=H.n, terms=poly_terms(H.T), gradient_floor=H.gradient_floor)


class SequenceSpec(BaseModel):
    """Finite planar sequence."""

    model_config = _SCENE_CONFIG

    points: list[ComplexPair] = Field(default_factory=list, description="Points as [re, im]")

    @field_validator("points")
    @classmethod
    def validate_distinct(cls, v: list[ComplexPair]) -> list[ComplexPair]:
        """Validate that points are pairwise distinct."""
        if len(set(v)) != len(v):
            raise ValueError("sequence points must be pairwise distinct")
        return v

    def build(self, label: str) -> Sequence1D:
        return Sequence1D(points=[_complex(p) for p in self.points], label=label)


class ProductSpec(BaseModel):
    """Product sequence ``{(gamma_j, lambda_jk)}`` in C^2."""

    model_config = _SCENE_CONFIG

    gamma: list[ComplexPair] = Field(default_factory=list, description="First coordinates")
    lambdas: list[list[ComplexPair]] = Field(default_factory=list, description="Fibers")

    @model_validator(mode="after")
    def validate_alignment(self) -> "ProductSpec":
        """Validate one fiber per gamma point and distinct points."""
        if len(self.lambdas) != len(self.gamma):
            raise ValueError(f"expected {len(self.gamma)} fibers, got {len(self.lambdas)}")
        for points in (self.gamma, *self.lambdas):
            if len(set(points)) != len(points):
                raise ValueError("sequence points must be pairwise distinct")
        return self

    def build(self, label: str) -> ProductSequence:
        return ProductSequence(
            gamma=Sequence1D(points=[_complex(p) for p in self.gamma]),
            lambdas=[Sequence1D(points=[_complex(p) for p in fiber]) for fiber in self.lambdas],
            label=label,
        )


class SceneDefaults(BaseModel):
    """Per-scene defaults; command-line flags override them."""

    model_config = _SCENE_CONFIG

    budget: int = Field(DEFAULT_BUDGET, gt=0, description="Monte Carlo budget")
    seed: int = Field(DEFAULT_SEED, ge=0, description="Master seed")
    leak_tolerance: float = Field(
        DEFAULT_LEAK_TOLERANCE, gt=0, le=1, description="Mass-leak acceptance threshold"
    )


class Scene(BaseModel):
    """Weight, hypersurface and sequences that the commands analyse."""

    model_config = _SCENE_CONFIG

    dimension: int = Field(..., ge=1, description="Ambient dimension n")
    weight: WeightSpec = Field(default_factory=WeightSpec, description="Weight phi")
    hypersurface: HypersurfaceSpec | None = Field(None, description="Target hypersurface")
    sequences: dict[str, SequenceSpec] = Field(default_factory=dict, description="1-D sequences")
    products: dict[str, ProductSpec] = Field(default_factory=dict, description="Product sequences")
    defaults: SceneDefaults = Field(default_factory=SceneDefaults, description="Defaults")

    @model_validator(mode="after")
    def validate_members(self) -> "Scene":
        """Validate consistent dimensions, a valid weight and at least one target."""
        if self.hypersurface is not None and self.hypersurface.dimension != self.dimension:
            raise ValueError(
                f"hypersurface.dimension {self.hypersurface.dimension} "
                f"differs from scene dimension {self.dimension}"
            )
        if self.weight.Q is not None and len(self.weight.Q) != self.dimension:
            raise ValueError(f"weight.Q has size {len(self.weight.Q)}, expected {self.dimension}")
        for alpha, _, _ in self.weight.pluriharmonic:
            if len(alpha) != self.dimension:
                raise ValueError(f"weight.pluriharmonic index {alpha} has wrong length")
        if self.sequences and self.dimension != 1:
            raise ValueError("sequences require dimension 1")
        if self.products and self.dimension != 2:
            raise ValueError("products require dimension 2")
        if self.hypersurface is None and not self.sequences and not self.products:
            raise ValueError("scene needs a hypersurface, a sequence or a product sequence")
        return self

    def build_weight(self) -> Weight:
        return self.weight.build(self.dimension)

    def build_hypersurface(self) -> Hypersurface | None:
        return self.hypersurface.build() if self.hypersurface is not None else None

    def build_sequence(self, name: str | None = None) -> Sequence1D | None:
        """Named sequence, or the first one when ``name`` is omitted."""
        if not self.sequences:
            return None
        key = name if name is not None else next(iter(self.sequences))
        spec = self.sequences.get(key)
        return spec.build(key) if spec is not None else None

    def build_product(self, name: str | None = None) -> ProductSequence | None:
        """Named product sequence, or the first one when ``name`` is omitted."""
        if not self.products:
            return None
        key = name if name is not None else next(iter(self.products))
        spec = self.products.get(key)
        return spec.build(key) if spec is not None else None
