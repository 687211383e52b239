"""Singularity command: s_r by the Newton route, the log route, or both."""

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
    read_points,
    write_outputs,
)
from fockdens.cli.output import console, create_table
from fockdens.models.reports import SingularityValue
from fockdens.services.exporters import export_singularity_csv
from fockdens.services.parallel import CellKey, map_cells
from fockdens.services.singularity import s_r_logT, s_r_newton


class Method(str, Enum):
    NEWTON = "newton"
    LOGT = "logT"
    BOTH = "both"


def singularity_command(
    scene: Path = SCENE,
    points: Path = typer.Option(..., "--points", help="File with one point per line"),
    radius: float = typer.Option(..., "--radius", help="Averaging radius r"),
    method: Method = typer.Option(Method.BOTH, "--method", help="newton, logT or both"),
    threads: int | None = typer.Option(None, "--threads", help="Worker thread cap"),
    seed: int | None = SEED,
    budget: int | None = BUDGET,
    output_dir: Path | None = OUTPUT_DIR,
) -> None:
    """Singular weight s_r at the listed points."""
    with command_errors():
        ctx = load_context(scene, seed, budget, output_dir)
        H = ctx.hypersurface()
        zs = read_points(points, H.n)

        def evaluate(key: CellKey, point_seed: int) -> list[SingularityValue]:
            z = zs[key[0]]
            routes = []
            if method in (Method.NEWTON, Method.BOTH):
                routes.append(s_r_newton(H, z, radius, ctx.budget, point_seed))
            if method in (Method.LOGT, Method.BOTH):
                routes.append(s_r_logT(H, z, radius, ctx.budget, point_seed))
            return routes

        keys = [(k,) for k in range(len(zs))]
        per_point = map_cells(
            evaluate, keys, ctx.seed, threads if threads is not None else ctx.threads
        )
        values = [v for routes in per_point for v in routes]
        console.print(
            create_table(
                "Singular weight s_r",
                ["point", "route", "value", "std error"],
                [
                    [
                        ", ".join(f"{c:.3g}" for c in v.point),
                        v.route.value,
                        f"{v.value:.6g}",
                        f"{v.quadrature_error:.2g}",
                    ]
                    for v in values
                ],
            )
        )
        write_outputs(ctx, "singularity", export_singularity_csv(values), list(values))
