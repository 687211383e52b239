"""Entry point for ``python -m fockdens``."""

from fockdens.cli.main import app

if __name__ == "__main__":
    app()
