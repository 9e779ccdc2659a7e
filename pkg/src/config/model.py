"""Models for the artifacts written by the toolkit.

Every JSON artifact is one of these models, serialized with
``model_dump_json(indent=2)`` so identical runs give identical bytes.
"""

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, field_validator

FORMAT_VERSION = "1"


class SequenceHeader(BaseModel):
    """Sidecar describing a generated sequence body file."""

    family: Literal["raw", "phi", "f"] = Field(description="Generator family of the sequence")
    h: Optional[int] = Field(default=None, description="Head parameter of the family (none for raw)")
    block_bits: int = Field(description="Symbol block width L")
    has_dollar: bool = Field(description="Whether the alphabet carries the marker symbol")
    seed: int = Field(description="Seed of the base random source")
    length: int = Field(description="Number of symbols in the body file")
    alphabet_size: int = Field(description="Number of symbols in the alphabet")
    encoding: Literal["packed-bits", "bytes"] = Field(
        description="Body layout: little-endian packed bits for binary alphabets, one byte per symbol otherwise"
    )
    version: str = FORMAT_VERSION


class TraceHeader(BaseModel):
    """Sidecar describing a run trace CSV."""

    config: dict[str, Any] = Field(default_factory=dict, description="Echo of the run configuration")
    heads: int = Field(description="Number of heads h of the gambler")
    alphabet_size: int = Field(description="Number of symbols in the alphabet")
    initial_capital: str = Field(default="1", description="Initial capital c0 as an exact rational num/den")
    hedge: Optional[str] = Field(default=None, description="Hedge used to recognize concentrated bets")
    s_values: list[float] = Field(default_factory=list, description="Exponents of the recorded s-gale columns")
    version: str = FORMAT_VERSION


class ValidationReport(BaseModel):
    """Result of validating a gambler spec."""

    valid: bool
    heads: int
    alphabet_size: int
    reachable_states: int
    transitions_checked: int


class ScheduleProvenance(BaseModel):
    """Which movement schedule the Phi-tracker builder emitted and why."""

    used: Literal["literal", "derived", "custom"]
    literal: list[tuple[int, int]] = Field(description="Per-mode (moves, period) as read off the construction")
    derived: list[tuple[int, int]] = Field(description="Per-mode (moves, period) derived from interval displacements")
    emitted: list[tuple[int, int]]
    literal_failures: int = Field(description="Number of oracle failures of the literal schedule")


class TrackingViolation(BaseModel):
    """One parity index where a head or the bet did not match the construction."""

    index: int
    interval: int
    kind: Literal["head", "bet"]
    head: Optional[int] = None
    required: int
    actual: int


class TrackingReport(BaseModel):
    """Outcome of checking a Phi-tracker trace against the required head positions."""

    h: int
    horizon: int
    warmup_end: int
    checked: int
    violations: list[TrackingViolation] = Field(default_factory=list)
    mode_switches: list[int] = Field(default_factory=list)
    marker_positions: list[int] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Return True when no violation was found."""
        return not self.violations


class IndexSetReport(BaseModel):
    """Named index sets plus verdicts recomputed from them."""

    params: dict[str, Any] = Field(default_factory=dict)
    sets: dict[str, list[tuple[int, int]]] = Field(
        default_factory=dict, description="Canonical closed intervals per named set"
    )
    verdicts: dict[str, Any] = Field(default_factory=dict)


class ReconstructionReport(BaseModel):
    """Outcome of an erase-and-reconstruct scenario."""

    scenario: str
    family: str
    h: int
    n: int
    m: Optional[int] = None
    seed: int
    passed: bool
    missing: list[int] = Field(default_factory=list, description="Target indices that were not deducible")
    mismatched: list[int] = Field(default_factory=list, description="Deduced indices whose value differs")
    erased: list[int] = Field(default_factory=list, description="X indices removed from every revealed set")
    erased_r: list[int] = Field(default_factory=list, description="R indices removed from every revealed set")

    @field_validator("missing", "mismatched", "erased", "erased_r")
    @classmethod
    def ensure_sorted(cls, v: list[int]) -> list[int]:
        """Keep index lists sorted and unique."""
        return sorted(set(v))


class CheckResult(BaseModel):
    """Outcome of one verification task."""

    check: str
    seed: int
    passed: bool
    summary: str
    details: dict[str, Any] = Field(default_factory=dict)


class VerificationSummary(BaseModel):
    """Merged outcome of a verification fan-out."""

    passed: bool
    results: list[CheckResult]
    config: dict[str, Any] = Field(default_factory=dict)


class TraceReport(BaseModel):
    """Summary of a run trace, produced by the report command."""

    config: dict[str, Any] = Field(default_factory=dict)
    checkpoints: int
    final_n: int
    initial_capital: str = Field(default="1", description="Initial capital c0 the growth is measured against")
    final_n: int
    growth_rate: str = Field(description="Per-step log2 growth relative to c0 at the last checkpoint")
    rho: str = Field(description="Full-win density at the last checkpoint")
    exponent: str = Field(description="Growth rate in units of log2 of the alphabet size")
    success_evidence: dict[str, bool] = Field(default_factory=dict)
    parity_losses: int
