"""State management for the verification graph."""

from dataclasses import dataclass, field
from typing import Annotated, Optional

from src.config.model import CheckResult, VerificationSummary


def reduce_results(
    existing: Optional[list[CheckResult]], new: list[CheckResult]
) -> list[CheckResult]:
    """Merge check results, ordered by (check, seed) whatever order they finish in."""
    merged = list(existing or []) + list(new)
    return sorted(merged, key=lambda result: (result.check, result.seed))


@dataclass(kw_only=True)
class CheckTask:
    """Private state of one run_check invocation."""

    check: str
    seed: int


@dataclass(kw_only=True)
class InputState:
    """Checks requested by the caller; empty means the configured ones."""

    checks: list[str] = field(default_factory=list)


@dataclass(kw_only=True)
class VerifyState(InputState):
    """State of the verification graph."""

    results: Annotated[list[CheckResult], reduce_results] = field(default_factory=list)
    summary: Optional[VerificationSummary] = None
