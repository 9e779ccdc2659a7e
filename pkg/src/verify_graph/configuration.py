"""Define the configurable parameters for the verification graph."""

from __future__ import annotations

from dataclasses import dataclass, field

from src.shared.configuration import BaseConfiguration

ALL_CHECKS = (
    "tracking",
    "reconstruction",
    "gale-identity",
    "speed-bound",
    "embedding",
    "drift",
    "disjointness",
    "beta",
    "figures",
    "rho",
)


@dataclass(kw_only=True)
class VerifyConfiguration(BaseConfiguration):
    """Parameters of a verification fan-out.

    Every check is run once per seed; a check's outcome depends on nothing
    but this configuration and its seed.
    """

    checks: list[str] = field(
        default_factory=lambda: list(ALL_CHECKS),
        metadata={"description": "Names of the checks to run."},
    )

    seeds: list[int] = field(
        default_factory=lambda: [0],
        metadata={"description": "Seeds; each check runs once per seed."},
    )

    heads: int = field(
        default=2,
        metadata={"description": "Head count h of the builtin gamblers and families under test."},
    )

    horizon: int = field(
        default=3**8,
        metadata={"description": "Largest sequence index a check simulates or reconstructs."},
    )

    samples: int = field(
        default=20,
        metadata={"description": "Sampled (m, n) windows or random machines per sampled check."},
    )

    depth: int = field(
        default=2,
        metadata={"description": "Recursion depth d of the hierarchy leaf sets."},
    )

    gamma: str = field(
        default="9/10",
        metadata={"description": "Window ratio m/n of the reconstruction scenarios, as 'num/den'."},
    )
