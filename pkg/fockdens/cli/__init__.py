"""Command-line interface for fockdens."""
