"""Runtime settings for fockdens."""

import os
from pathlib import Path

from pydantic import BaseModel, Field, field_validator

from fockdens.constants import DEFAULT_BUDGET, DEFAULT_LEAK_TOLERANCE, DEFAULT_SEED

MAX_DEFAULT_THREADS = 8


def _default_threads() -> int:
    return min(os.cpu_count() or 1, MAX_DEFAULT_THREADS)


class Settings(BaseModel):
    """Application settings."""

    model_config = {"frozen": True}

    threads: int = Field(default_factory=_default_threads, description="Worker thread cap")
    seed: int = Field(DEFAULT_SEED, description="Master seed")
    budget: int = Field(DEFAULT_BUDGET, description="Default Monte Carlo budget")
    output_dir: Path = Field(Path("fockdens-reports"), description="Report directory")
    leak_tolerance: float = Field(
        DEFAULT_LEAK_TOLERANCE, description="Mass-leak acceptance threshold"
    )

    @classmethod
    def from_env(cls) -> "Settings":
        """Create Settings from environment variables.

        Raises:
            ValueError: If a variable is set to an unparsable or out-of-range value
        """
        values: dict[str, object] = {}

        threads_env = os.environ.get("FOCKDENS_THREADS")
        if threads_env:
            values["threads"] = int(threads_env)

        seed_env = os.environ.get("FOCKDENS_SEED")
        if seed_env:
            values["seed"] = int(seed_env)

        budget_env = os.environ.get("FOCKDENS_BUDGET")
        if budget_env:
            values["budget"] = int(budget_env)

        output_env = os.environ.get("FOCKDENS_OUTPUT_DIR")
        if output_env:
            values["output_dir"] = Path(output_env)

        leak_env = os.environ.get("FOCKDENS_LEAK_TOLERANCE")
        if leak_env:
            values["leak_tolerance"] = float(leak_env)

        return cls.model_validate(values)

    @field_validator("threads", "budget")
    @classmethod
    def validate_positive_int(cls, v: int) -> int:
        """Validate counts are positive."""
        if v <= 0:
            raise ValueError("must be positive")
        return v

    @field_validator("seed")
    @classmethod
    def validate_seed(cls, v: int) -> int:
        """Validate seed is non-negative (numpy SeedSequence requirement)."""
        if v < 0:
            raise ValueError("seed must be non-negative")
        return v

    @field_validator("leak_tolerance")
    @classmethod
    def validate_leak_tolerance(cls, v: float) -> float:
        """Validate leak tolerance lies in (0, 1)."""
        if not 0 < v < 1:
            raise ValueError("leak tolerance must lie in (0, 1)")
        return v
