"""Shared utilities module."""

from src.shared import configuration, errors, rationals

__all__ = ["configuration", "errors", "rationals"]
