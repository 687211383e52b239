"""Main CLI application."""

from importlib.metadata import PackageNotFoundError, version

import typer
from rich.console import Console

from fockdens.cli.commands.density import (
    density_command,
    density_scan_command,
    flatness_command,
)
from fockdens.cli.commands.focknum import extend_command, jensen_command, sampling_ratio_command
from fockdens.cli.commands.sequences import product_check_command, seq_density_command
from fockdens.cli.commands.singularity import singularity_command
from fockdens.cli.output import configure_logging

app = typer.Typer(
    name="fockdens",
    help="Density invariants and sampling diagnostics for Bargmann-Fock spaces",
    add_completion=False,
)

console = Console()


def version_callback(value: bool) -> None:
    """Show version and exit."""
    if value:
        try:
            pkg_version = version("fockdens")
            console.print(f"fockdens, version {pkg_version}")
        except PackageNotFoundError:
            error_console = Console(stderr=True)
            error_console.print("[red]Error: Could not retrieve package version.[/red]")
            error_console.print("This may indicate an improper installation.")
            error_console.print("\nPlease try reinstalling fockdens:")
            error_console.print("  uv pip install --reinstall fockdens")
            raise typer.Exit(1)
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(
        None,
        "--version",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit.",
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log numerical details."),
) -> None:
    """Density invariants and sampling diagnostics for Bargmann-Fock spaces."""
    configure_logging(verbose)


app.command(name="density")(density_command)
app.command(name="density-scan")(density_scan_command)
app.command(name="singularity")(singularity_command)
app.command(name="flatness")(flatness_command)
app.command(name="sampling-ratio")(sampling_ratio_command)
app.command(name="extend")(extend_command)
app.command(name="jensen")(jensen_command)
app.command(name="product-check")(product_check_command)
app.command(name="seq-density")(seq_density_command)


if __name__ == "__main__":
    app()
