"""Configuration of one command-line invocation."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from src.shared.configuration import BaseConfiguration


@dataclass(kw_only=True)
class RunConfig(BaseConfiguration):
    """Everything that determines the output of a command.

    The echo of this object is embedded in every artifact a command writes,
    so an artifact can always be regenerated from its own sidecar.
    """

    command: str = field(
        default="run",
        metadata={"description": "Subcommand that produced the artifact."},
    )

    family: Optional[str] = field(
        default=None,
        metadata={"description": "Sequence family: raw, phi or f."},
    )

    h: Optional[int] = field(
        default=None,
        metadata={"description": "Head parameter of the family and of the builtin gambler."},
    )

    block_bits: int = field(
        default=1,
        metadata={"description": "Symbol block width L."},
    )

    gambler: str = field(
        default="builtin-phi",
        metadata={"description": "builtin-phi, builtin-f, builtin-phi-baseline or a spec file path."},
    )

    speed: Optional[int] = field(
        default=None,
        metadata={"description": "Speed numerator j of the frozen baseline head, j/(h+1)."},
    )

    sequence_path: Optional[str] = field(
        default=None,
        metadata={"description": "Sequence file to read instead of generating from the seed."},
    )

    n_max: Optional[int] = field(
        default=None,
        metadata={"description": "Number of steps to simulate."},
    )

    s_values: list[float] = field(
        default_factory=list,
        metadata={"description": "Gale exponents s whose log2 d^(s) is reported."},
    )

    checkpoints: str = field(
        default="boundaries",
        metadata={"description": "'boundaries', 'geometric:<r>' or a comma-separated list."},
    )

    out: Optional[str] = field(
        default=None,
        metadata={"description": "Output path; standard output when unset."},
    )

    exact: bool = field(
        default=False,
        metadata={"description": "Cross-check the log-domain capital against exact rationals."},
    )

    def echo(self) -> dict[str, Any]:
        """Return a JSON-serializable copy without machine-local paths."""
        out = asdict(self)
        out.pop("cache_dir", None)
        return out
