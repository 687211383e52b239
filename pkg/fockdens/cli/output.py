"""Output utilities for CLI."""

import logging
from collections.abc import Sequence

from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

console = Console()
error_console = Console(stderr=True, style="red")


def configure_logging(verbose: bool) -> None:
    """Route library logging to a rich handler on stderr.

    Args:
        verbose: DEBUG when true, WARNING otherwise
    """
    handler = RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=False)
    root = logging.getLogger("fockdens")
    root.handlers = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)
    root.propagate = False


def create_table(title: str, columns: Sequence[str], rows: Sequence[Sequence[str]]) -> Table:
    """Create Rich table for a report summary.

    Args:
        title: Table title
        columns: Column headers
        rows: Pre-formatted cell strings

    Returns:
        Rich Table object
    """
    table = Table(title=title)
    styles = ["cyan", "magenta", "green", "yellow", "blue"]
    for k, column in enumerate(columns):
        table.add_column(column, style=styles[k % len(styles)], no_wrap=k == 0)
    for row in rows:
        table.add_row(*row)
    return table


def display_error(message: str, suggestion: str | None = None) -> None:
    """Display error message to stderr.

    Args:
        message: Error message
        suggestion: Optional suggestion for resolution
    """
    error_console.print(f"Error: {message}")
    if suggestion:
        error_console.print(f"\n{suggestion}")
