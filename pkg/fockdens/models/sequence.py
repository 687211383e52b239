"""Point-sequence models."""

from pydantic import BaseModel, Field, field_validator, model_validator


class Sequence1D(BaseModel):
    """Finite sequence of distinct points in the plane."""

    model_config = {"frozen": True}

    points: list[complex] = Field(default_factory=list, description="Sequence points")
    label: str = Field("", description="Human-readable label")

    @field_validator("points")
    @classmethod
    def validate_distinct(cls, v: list[complex]) -> list[complex]:
        """Validate that points are pairwise distinct."""
        if len(set(v)) != len(v):
            raise ValueError("sequence points must be pairwise distinct")
        return v

    def __len__(self) -> int:
        return len(self.points)


class ProductSequence(BaseModel):
    """Sequence ``{(gamma_j, lambda_jk)}`` in C^2 with one fiber per ``gamma_j``."""

    model_config = {"frozen": True}

    gamma: Sequence1D = Field(..., description="First-coordinate sequence")
    lambdas: list[Sequence1D] = Field(..., description="Fiber sequences, index-aligned")
    label: str = Field("", description="Human-readable label")

    @model_validator(mode="after")
    def validate_alignment(self) -> "ProductSequence":
        """Validate one fiber per gamma point."""
        if len(self.lambdas) != len(self.gamma.points):
            raise ValueError(
                f"expected {len(self.gamma.points)} fiber sequences, got {len(self.lambdas)}"
            )
        return self

    def points(self) -> list[tuple[complex, complex]]:
        return [
            (g, lam)
            for g, fiber in zip(self.gamma.points, self.lambdas, strict=True)
            for lam in fiber.points
        ]
