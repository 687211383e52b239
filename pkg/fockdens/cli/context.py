"""Shared plumbing for commands: scene and settings resolution, parsing, report files."""

from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import TypeVar, cast

import typer
from pydantic import BaseModel

from fockdens.cli.output import console, display_error
from fockdens.constants import EXIT_VALIDATION
from fockdens.exceptions import (
    FockDensError,
    InvalidParameterError,
    SceneValidationError,
    TruncationError,
    UnderdeterminedError,
)
from fockdens.models.config import Settings
from fockdens.models.hypersurface import Hypersurface
from fockdens.models.scene import Scene
from fockdens.services.exporters import export_json
from fockdens.services.scene_loader import parse_scene

_SUGGESTIONS: dict[type[FockDensError], str] = {
    SceneValidationError: "Check the scene file against the format in docs/cli-reference.md.",
    TruncationError: "Enlarge --window or lower --degree (or relax --leak-tolerance).",
    UnderdeterminedError: "Pass --regularization > 0 or lower --degree.",
}

T = TypeVar("T")


@contextmanager
def command_errors() -> Iterator[None]:
    """Map library errors to the error console and their exit codes."""
    try:
        yield
    except FockDensError as e:
        suggestion = next(
            (text for kind, text in _SUGGESTIONS.items() if isinstance(e, kind)), None
        )
        display_error(str(e), suggestion)
        raise typer.Exit(e.exit_code) from e


@dataclass(frozen=True)
class RunContext:
    """Scene plus the effective seed, budget and output directory of one run."""

    scene: Scene
    seed: int
    budget: int
    leak_tolerance: float
    threads: int
    output_dir: Path

    def hypersurface(self) -> Hypersurface:
        H = self.scene.build_hypersurface()
        if H is None:
            raise SceneValidationError("hypersurface", "this command needs a hypersurface")
        return H


def load_context(
    scene_path: Path,
    seed: int | None,
    budget: int | None,
    output_dir: Path | None,
    leak_tolerance: float | None = None,
) -> RunContext:
    """Resolve flags over scene defaults over environment settings.

    Raises:
        typer.Exit: With code 2 on configuration errors
        SceneValidationError: If the scene is invalid
    """
    try:
        settings = Settings.from_env()
    except ValueError as e:
        display_error("Configuration error", str(e))
        raise typer.Exit(EXIT_VALIDATION) from e
    scene = parse_scene(scene_path)
    defaults = scene.defaults

    def pick(flag: T | None, field: str, env_value: T) -> T:
        if flag is not None:
            return flag
        if field in defaults.model_fields_set:
            return cast(T, getattr(defaults, field))
        return env_value

    return RunContext(
        scene=scene,
        seed=pick(seed, "seed", settings.seed),
        budget=pick(budget, "budget", settings.budget),
        leak_tolerance=pick(leak_tolerance, "leak_tolerance", settings.leak_tolerance),
        threads=settings.threads,
        output_dir=output_dir if output_dir is not None else settings.output_dir,
    )


def parse_vector(text: str, n: int) -> list[complex]:
    """Parse ``"0,1+2j"`` into ``n`` complex entries.

    Raises:
        InvalidParameterError: If an entry does not parse or the length is wrong
    """
    try:
        values = [complex(part.strip().replace(" ", "")) for part in text.split(",")]
    except ValueError as e:
        raise InvalidParameterError("point", text, "entries must be complex numbers") from e
    if len(values) != n:
        raise InvalidParameterError("point", text, f"expected {n} entries")
    return values


def parse_floats(text: str, name: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise InvalidParameterError(name, text, "expected comma-separated numbers") from e


def read_points(path: Path, n: int) -> list[list[complex]]:
    """One point per line in the :func:`parse_vector` syntax; ``#`` starts a comment."""
    if not path.is_file():
        raise InvalidParameterError("points", str(path), "file not found")
    points = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            points.append(parse_vector(line, n))
    if not points:
        raise InvalidParameterError("points", str(path), "no points found")
    return points


def write_outputs(ctx: RunContext, name: str, csv_text: str, reports: Sequence[BaseModel]) -> Path:
    """Write ``<name>.csv`` and ``<name>.json`` under the output directory."""
    out = ctx.output_dir
    try:
        out.mkdir(parents=True, exist_ok=True)
        csv_path = out / f"{name}.csv"
        csv_path.write_text(csv_text, encoding="utf-8")
        (out / f"{name}.json").write_text(export_json(reports), encoding="utf-8")
    except OSError as e:
        display_error(
            f"Failed to write reports to '{out}'.",
            f"Cause: {e}\n\nCheck directory permissions or pass --output-dir.",
        )
        raise typer.Exit(1) from e
    console.print(f"[green]Wrote {csv_path}[/green]")
    return csv_path


SCENE = typer.Option(..., "--scene", help="Scene JSON file")
SEED = typer.Option(None, "--seed", help="Master seed (default 42 or FOCKDENS_SEED)")
BUDGET = typer.Option(None, "--budget", help="Monte Carlo budget")
OUTPUT_DIR = typer.Option(None, "--output-dir", help="Report directory")
