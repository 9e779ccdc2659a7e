"""Run gamblers over sequences and read capital statistics off the traces."""

from src.gale_engine.analysis import (
    SuccessEvidence,
    empirical_exponent,
    growth_rates,
    rho_stat,
    success_evidence,
)
from src.gale_engine.checkpoints import (
    boundary_checkpoints,
    geometric_checkpoints,
    normalize_checkpoints,
    parse_schedule,
)
from src.gale_engine.crosscheck import exact_crosscheck, gale_identity, simulate_oblivious
from src.gale_engine.engine import Checkpoint, GaleEngine, RunTrace, StepLog, run
from src.gale_engine.trace_io import read_trace_header, trace_report, write_trace, write_trace_csv

__all__ = [
    "Checkpoint",
    "GaleEngine",
    "RunTrace",
    "StepLog",
    "SuccessEvidence",
    "boundary_checkpoints",
    "empirical_exponent",
    "exact_crosscheck",
    "gale_identity",
    "geometric_checkpoints",
    "growth_rates",
    "normalize_checkpoints",
    "parse_schedule",
    "read_trace_header",
    "rho_stat",
    "run",
    "simulate_oblivious",
    "success_evidence",
    "trace_report",
    "write_trace",
    "write_trace_csv",
]
