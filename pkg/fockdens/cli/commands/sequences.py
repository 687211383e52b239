"""Product-check and seq-density commands."""

from enum import Enum
from pathlib import Path

import typer

from fockdens.cli.context import (
    OUTPUT_DIR,
    SCENE,
    command_errors,
    load_context,
    parse_floats,
    parse_vector,
    read_points,
    write_outputs,
)
from fockdens.cli.output import console, create_table
from fockdens.exceptions import SceneValidationError
from fockdens.models.reports import CriterionReport, Verdict
from fockdens.services.exporters import export_criterion_csv, export_seq_density_csv
from fockdens.services.sequences import (
    default_grid,
    product_interp_check,
    product_samp_check,
    seq_density_report,
)


class Mode(str, Enum):
    INTERP = "interp"
    SAMP = "samp"


_VERDICT_STYLE = {
    Verdict.SATISFIED: "green",
    Verdict.VIOLATED: "yellow",
    Verdict.INCONCLUSIVE: "dim",
}


def product_check_command(
    scene: Path = SCENE,
    mode: Mode = typer.Option(Mode.INTERP, "--mode", help="interp or samp"),
    r: float = typer.Option(..., "--r", help="Radius of the split-density test"),
    eps: float = typer.Option(..., "--eps", help="Density slack epsilon"),
    product: str | None = typer.Option(None, "--product", help="Product sequence name"),
    grid: Path | None = typer.Option(
        None, "--grid", help="File of (z, w) grid points; origin and (gamma_j, 0) if omitted"
    ),
    output_dir: Path | None = OUTPUT_DIR,
) -> None:
    """Split-density sufficient conditions for a product sequence in C^2."""
    with command_errors():
        ctx = load_context(scene, None, None, output_dir)
        ps = ctx.scene.build_product(product)
        if ps is None:
            raise SceneValidationError("products", "this command needs a product sequence")
        points = (
            [(p[0], p[1]) for p in read_points(grid, 2)] if grid is not None else default_grid(ps)
        )
        check = product_interp_check if mode is Mode.INTERP else product_samp_check
        report: CriterionReport = check(ps, ctx.scene.build_weight(), r, eps, points)
        console.print(
            create_table(
                f"Product check ({mode.value}, {report.convention})",
                ["min margin", "max margin", "fibers", "verdict"],
                [
                    [
                        f"{report.min_margin:.4g}",
                        f"{report.max_margin:.4g}",
                        str(len(report.lambda_densities)),
                        report.verdict.value,
                    ]
                ],
            )
        )
        console.print(f"[{_VERDICT_STYLE[report.verdict]}]{report.wording}[/]")
        write_outputs(ctx, "product-check", export_criterion_csv(report), [report])


def seq_density_command(
    scene: Path = SCENE,
    radii: str = typer.Option(..., "--radii", help="Disc radii, e.g. '5,10,20'"),
    center: str = typer.Option("0", "--center", help="Disc center"),
    sequence: str | None = typer.Option(None, "--sequence", help="Sequence name"),
    output_dir: Path | None = OUTPUT_DIR,
) -> None:
    """One-dimensional density #(s in D(z,R)) / int_D Laplacian(phi)."""
    with command_errors():
        ctx = load_context(scene, None, None, output_dir)
        seq = ctx.scene.build_sequence(sequence)
        if seq is None:
            raise SceneValidationError("sequences", "this command needs a sequence")
        z = parse_vector(center, 1)[0]
        w = ctx.scene.build_weight()
        reports = [seq_density_report(seq, w, z, R) for R in parse_floats(radii, "radii")]
        console.print(
            create_table(
                f"Sequence density ({seq.label})",
                ["R", "count", "density"],
                [[f"{r.R:g}", str(r.count), f"{r.density:.6g}"] for r in reports],
            )
        )
        write_outputs(ctx, "seq-density", export_seq_density_csv(reports), reports)
