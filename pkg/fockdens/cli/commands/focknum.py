"""Sampling-ratio, extend and jensen commands."""

from enum import Enum
from pathlib import Path

import typer

from fockdens.cli.context import (
    BUDGET,
    OUTPUT_DIR,
    SCENE,
    SEED,
    command_errors,
    load_context,
    parse_floats,
    write_outputs,
)
from fockdens.cli.output import console, create_table
from fockdens.exceptions import InvalidParameterError, SceneValidationError
from fockdens.models.algebra import MultiPoly
from fockdens.models.reports import JensenReport, SamplingRatioReport
from fockdens.models.sequence import Sequence1D
from fockdens.services.exporters import (
    export_extension_csv,
    export_jensen_csv,
    export_sampling_csv,
)
from fockdens.services.focknum import (
    AMBIENT,
    Target,
    jensen_identity_check,
    jensen_ratio,
    min_norm_extension,
    sampling_ratio_bounds,
    surface_values,
)
from fockdens.services.sequences import lattice

LEAK_TOLERANCE = typer.Option(None, "--leak-tolerance", help="Mass-leak acceptance threshold")
SEQUENCE = typer.Option(None, "--sequence", help="Sequence name in the scene (first if omitted)")


class TargetKind(str, Enum):
    HYPERSURFACE = "hypersurface"
    SEQUENCE = "sequence"
    AMBIENT = "ambient"
    LATTICE = "lattice"


def _scene_sequence(sequence: Sequence1D | None) -> Sequence1D:
    if sequence is None:
        raise SceneValidationError("sequences", "this command needs a named sequence")
    return sequence


def sampling_ratio_command(
    scene: Path = SCENE,
    target: TargetKind = typer.Option(TargetKind.HYPERSURFACE, "--target", help="Target kind"),
    window: float = typer.Option(..., "--window", help="Window radius R"),
    degree: int = typer.Option(..., "--degree", help="Truncation degree N"),
    alphas: str = typer.Option("", "--alphas", help="Lattice spacings for --target lattice"),
    sequence: str | None = SEQUENCE,
    leak_tolerance: float | None = LEAK_TOLERANCE,
    seed: int | None = SEED,
    budget: int | None = BUDGET,
    output_dir: Path | None = OUTPUT_DIR,
) -> None:
    """Frame bounds (m, M) of a target against the window B(0, R)."""
    with command_errors():
        ctx = load_context(scene, seed, budget, output_dir, leak_tolerance)
        w = ctx.scene.build_weight()

        def bounds(t: Target) -> SamplingRatioReport:
            return sampling_ratio_bounds(
                t, w, window, degree, ctx.budget, ctx.seed, ctx.leak_tolerance
            )

        rows: list[tuple[str, SamplingRatioReport]] = []
        if target is TargetKind.LATTICE:
            spacings = parse_floats(alphas, "alphas")
            if not spacings:
                raise InvalidParameterError("alphas", alphas, "lattice target needs spacings")
            rows = [(f"alpha={a:g}", bounds(lattice(a, window))) for a in spacings]
        elif target is TargetKind.SEQUENCE:
            seq = _scene_sequence(ctx.scene.build_sequence(sequence))
            rows = [(seq.label, bounds(seq))]
        elif target is TargetKind.AMBIENT:
            rows = [(AMBIENT, bounds(AMBIENT))]
        else:
            rows = [("hypersurface", bounds(ctx.hypersurface()))]

        console.print(
            create_table(
                f"Sampling ratio (R={window:g}, N={degree})",
                ["parameter", "m", "M", "conditioning", "mass leak"],
                [
                    [
                        p,
                        f"{r.lower:.4e}",
                        f"{r.upper:.4e}",
                        f"{r.conditioning:.3g}",
                        f"{r.mass_leak:.2e}",
                    ]
                    for p, r in rows
                ],
            )
        )
        write_outputs(ctx, "sampling-ratio", export_sampling_csv(rows), [r for _, r in rows])


def extend_command(
    scene: Path = SCENE,
    monomial: str = typer.Option(..., "--monomial", help="Exponents of f = z^a, e.g. '3,0'"),
    window: float = typer.Option(..., "--window", help="Sampling window radius R"),
    degree: int = typer.Option(..., "--degree", help="Truncation degree N"),
    regularization: float = typer.Option(0.0, "--regularization", help="Tikhonov lambda"),
    seed: int | None = SEED,
    budget: int | None = BUDGET,
    output_dir: Path | None = OUTPUT_DIR,
) -> None:
    """Minimum-norm extension of f = z^a from W into the truncated space."""
    with command_errors():
        ctx = load_context(scene, seed, budget, output_dir)
        H = ctx.hypersurface()
        try:
            alpha = tuple(int(a) for a in monomial.split(","))
        except ValueError as e:
            raise InvalidParameterError("monomial", monomial, "expected integers") from e
        f = MultiPoly(H.n, ((alpha, 1.0),))
        samples = surface_values(H, f, window, ctx.budget, ctx.seed)
        report = min_norm_extension(H, samples, ctx.scene.build_weight(), degree, regularization)
        console.print(
            create_table(
                "Minimum-norm extension",
                ["degree", "residual", "ambient norm", "surface norm", "ratio"],
                [
                    [
                        str(report.degree),
                        f"{report.residual:.2e}",
                        f"{report.ambient_norm:.6g}",
                        f"{report.surface_norm:.6g}",
                        f"{report.ratio:.6g}",
                    ]
                ],
            )
        )
        write_outputs(ctx, "extend", export_extension_csv(report), [report])


def jensen_command(
    scene: Path = SCENE,
    radii: str = typer.Option(..., "--radii", help="Outer radii R > 1, e.g. '2,4,8'"),
    sequence: str | None = SEQUENCE,
    output_dir: Path | None = OUTPUT_DIR,
) -> None:
    """Counting side against weight side of the one-dimensional Jensen argument."""
    with command_errors():
        ctx = load_context(scene, None, None, output_dir)
        zeros = _scene_sequence(ctx.scene.build_sequence(sequence)).points
        w = ctx.scene.build_weight()
        outer = parse_floats(radii, "radii")
        if not outer:
            raise InvalidParameterError("radii", radii, "at least one radius required")
        reports: list[JensenReport] = [jensen_ratio(zeros, w, R) for R in outer]
        gaps = [jensen_identity_check(zeros, r.R).gap for r in reports]
        console.print(
            create_table(
                "Jensen",
                ["R", "lhs", "rhs", "ratio", "identity gap"],
                [
                    [f"{r.R:g}", f"{r.lhs:.6g}", f"{r.rhs:.6g}", f"{r.ratio:.4g}", f"{g:.1e}"]
                    for r, g in zip(reports, gaps, strict=True)
                ],
            )
        )
        console.print(f"[dim]{reports[0].convention}; no threshold applied[/dim]")
        write_outputs(ctx, "jensen", export_jensen_csv(reports), list(reports))
