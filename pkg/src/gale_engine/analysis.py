"""Statistics read off a run trace."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from src.gale_engine.engine import Checkpoint, RunTrace


def _selected(trace: RunTrace, along: Optional[Iterable[int]]) -> list[Checkpoint]:
    if along is None:
        return list(trace.checkpoints)
    wanted = set(along)
    return [c for c in trace.checkpoints if c.n in wanted]


def rho_stat(trace: RunTrace, along: Optional[Iterable[int]] = None) -> list[tuple[int, Fraction]]:
    """Full-win density rho(n) = full wins / n at each checkpoint.

    Raises:
        ValueError: When the trace was produced without a hedge, so no bet
            was ever recognized as concentrated.
    """
    if trace.hedge is None:
        raise ValueError("rho needs a trace produced with full-win counting (a hedge)")
    return [(c.n, Fraction(c.full_wins, c.n)) for c in _selected(trace, along)]


def empirical_exponent(
    trace: RunTrace, along: Optional[Iterable[int]] = None
) -> list[tuple[int, float]]:
    """Return log_|Sigma| d_G(X[0..n-1]) / n per checkpoint."""
    scale = math.log2(trace.alphabet_size)
    return [(c.n, c.log2_capital / (c.n * scale)) for c in _selected(trace, along)]


def growth_rates(trace: RunTrace, along: Optional[Iterable[int]] = None) -> list[tuple[int, float]]:
    """Per-step log2 growth of the capital relative to c0."""
    return [(c.n, trace.growth_rate(c.n)) for c in _selected(trace, along)]


@dataclass(frozen=True)
class SuccessEvidence:
    """Finite-horizon reading of an s-gale: sign and trend of log d^(s)."""

    s: float
    last_values: tuple[float, ...]
    positive: bool
    increasing: bool

    @property
    def evidence(self) -> bool:
        """Return True when log d^(s) rose across the last three checkpoints.

        This is a proxy for success, never a proof of it.
        """
        return self.increasing


def success_evidence(
    trace: RunTrace, along: Optional[Iterable[int]] = None, window: int = 3
) -> list[SuccessEvidence]:
    """Evaluate every tracked s over the last ``window`` selected checkpoints."""
    checkpoints = _selected(trace, along)[-window:]
    verdicts = []
    for j, s in enumerate(trace.s_values):
        values = tuple(c.log2_gales[j] for c in checkpoints)
        increasing = len(values) == window and all(a < b for a, b in zip(values, values[1:]))
        verdicts.append(
            SuccessEvidence(
                s=s,
                last_values=values,
                positive=bool(values) and values[-1] > 0,
                increasing=increasing,
            )
        )
    return verdicts
