"""Density, density-scan and flatness commands."""

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
    parse_vector,
    read_points,
    write_outputs,
)
from fockdens.cli.output import console, create_table
from fockdens.services.density import density_at, density_scan
from fockdens.services.exporters import (
    export_density_csv,
    export_flatness_csv,
    export_scan_csv,
    export_scan_summary_csv,
)
from fockdens.services.hypersurface import flatness_check


def density_command(
    scene: Path = SCENE,
    center: str = typer.Option(..., "--center", help="Ball center, e.g. '0,0'"),
    radius: float = typer.Option(..., "--radius", help="Ball radius r"),
    seed: int | None = SEED,
    budget: int | None = BUDGET,
    output_dir: Path | None = OUTPUT_DIR,
) -> None:
    """Directional density D(W, z, r) at one center."""
    with command_errors():
        ctx = load_context(scene, seed, budget, output_dir)
        H = ctx.hypersurface()
        z = parse_vector(center, H.n)
        report = density_at(H, ctx.scene.build_weight(), z, radius, ctx.budget, ctx.seed)
        console.print(
            create_table(
                "Density",
                ["radius", "density", "std error", "area"],
                [
                    [
                        f"{radius:g}",
                        f"{report.density:.6g}",
                        f"{report.mc_std_error:.2g}",
                        f"{report.area:.6g}",
                    ]
                ],
            )
        )
        write_outputs(ctx, "density", export_density_csv([report]), [report])


def density_scan_command(
    scene: Path = SCENE,
    centers: Path = typer.Option(..., "--centers", help="File with one center per line"),
    radii: str = typer.Option(..., "--radii", help="Ascending radii, e.g. '1,2,4,8'"),
    threads: int | None = typer.Option(None, "--threads", help="Worker thread cap"),
    seed: int | None = SEED,
    budget: int | None = BUDGET,
    output_dir: Path | None = OUTPUT_DIR,
) -> None:
    """Densities over a centers x radii grid with sup/inf per radius."""
    with command_errors():
        ctx = load_context(scene, seed, budget, output_dir)
        H = ctx.hypersurface()
        points = read_points(centers, H.n)
        report = density_scan(
            H,
            ctx.scene.build_weight(),
            points,
            parse_floats(radii, "radii"),
            ctx.budget,
            ctx.seed,
            threads if threads is not None else ctx.threads,
        )
        console.print(
            create_table(
                "Density scan",
                ["radius", "sup over z", "inf over z"],
                [
                    [f"{r:g}", f"{sup:.6g}", f"{inf:.6g}"]
                    for r, sup, inf in zip(
                        report.radii, report.sup_over_z, report.inf_over_z, strict=True
                    )
                ],
            )
        )
        console.print(
            f"sup {report.trend.sup_shape.value}, inf {report.trend.inf_shape.value} "
            f"({report.trend.note})"
        )
        write_outputs(ctx, "density-scan", export_scan_csv(report), [report])
        (ctx.output_dir / "density-scan-summary.csv").write_text(
            export_scan_summary_csv(report), encoding="utf-8"
        )


def flatness_command(
    scene: Path = SCENE,
    center: str = typer.Option(..., "--center", help="Region center"),
    radius: float = typer.Option(..., "--radius", help="Region radius"),
    seed: int | None = SEED,
    budget: int | None = BUDGET,
    output_dir: Path | None = OUTPUT_DIR,
) -> None:
    """Sampled (heuristic) uniform-flatness diagnostics."""
    with command_errors():
        ctx = load_context(scene, seed, budget, output_dir)
        H = ctx.hypersurface()
        report = flatness_check(H, parse_vector(center, H.n), radius, ctx.budget, ctx.seed)
        console.print(
            create_table(
                "Flatness (heuristic)",
                ["epsilon", "graph constant", "normal injectivity", "samples"],
                [
                    [
                        f"{report.epsilon_estimate:.4g}",
                        f"{report.max_graph_constant:.4g}",
                        f"{report.min_normal_injectivity:.4g}",
                        str(report.samples),
                    ]
                ],
            )
        )
        write_outputs(ctx, "flatness", export_flatness_csv(report), [report])
