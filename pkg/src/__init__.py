"""Root package for the gambler lab."""

# Shared modules reachable without the src prefix
from .shared import (
    configuration,
    errors,
    rationals,
)

__all__ = ["configuration", "errors", "rationals"]
