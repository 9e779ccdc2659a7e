"""Command-line surface of the toolkit."""

from src.cli.configuration import RunConfig
from src.cli.main import build_parser, main

__all__ = ["RunConfig", "build_parser", "main"]
