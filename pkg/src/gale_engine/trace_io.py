"""CSV form of run traces and the summary report built from it."""

import csv
import logging
import math
from fractions import Fraction
from pathlib import Path
from typing import IO, Optional, Union

from src.config.model import TraceHeader, TraceReport
from src.gale_engine.engine import RunTrace
from src.shared.rationals import format_float, format_rational, parse_rational

logger = logging.getLogger("gale_engine")


def trace_columns(trace: RunTrace) -> list[str]:
    """Column names: n, log2_capital, s_<v>..., pi_1..pi_{h-1}, counters."""
    return [
        "n",
        "log2_capital",
        *(f"s_{s:g}" for s in trace.s_values),
        *(f"pi_{i}" for i in range(1, trace.heads)),
        "full_wins",
        "parity_bets",
        "parity_losses",
    ]


def write_trace_csv(trace: RunTrace, stream: IO[str]) -> None:
    """Write one row per checkpoint."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(trace_columns(trace))
    for c in trace.checkpoints:
        writer.writerow(
            [
                c.n,
                format_float(c.log2_capital),
                *(format_float(v) for v in c.log2_gales),
                *c.positions,
                c.full_wins,
                c.parity_bets,
                c.parity_losses,
            ]
        )


def config_sidecar(path: Union[str, Path]) -> Path:
    """Path of the JSON file holding the config echo of a trace CSV."""
    return Path(f"{path}.json")


def write_trace(trace: RunTrace, path: Union[str, Path]) -> Path:
    """Write the CSV and its config sidecar; return the CSV path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as stream:
        write_trace_csv(trace, stream)
    header = TraceHeader(
        config=trace.config,
        heads=trace.heads,
        alphabet_size=trace.alphabet_size,
        initial_capital=format_rational(trace.initial_capital),
        hedge=None if trace.hedge is None else format_rational(trace.hedge),
        s_values=list(trace.s_values),
    )
    config_sidecar(path).write_text(header.model_dump_json(indent=2) + "\n")
    logger.info(f"wrote {len(trace.checkpoints)} checkpoints to {path}")
    return path


def read_trace_rows(path: Union[str, Path]) -> list[dict[str, str]]:
    """Read a trace CSV back as a list of string-valued rows."""
    with Path(path).open(newline="") as stream:
        return list(csv.DictReader(stream))


def read_trace_header(path: Union[str, Path]) -> Optional[TraceHeader]:
    """Read the sidecar of a trace CSV, or None when it is absent."""
    sidecar = config_sidecar(path)
    if not sidecar.exists():
        return None
    return TraceHeader.model_validate_json(sidecar.read_text())


def trace_report(path: Union[str, Path]) -> TraceReport:
    """Summarize a trace CSV.

    Without a sidecar the alphabet is taken as binary and c0 as 1.
    """
    rows = read_trace_rows(path)
    if not rows:
        raise ValueError(f"trace {path} has no checkpoints")
    header = read_trace_header(path)
    size = header.alphabet_size if header is not None else 2
    capital = parse_rational(header.initial_capital) if header is not None else Fraction(1)
    last = rows[-1]
    n = int(last["n"])
    base = math.log2(capital) if capital > 0 else 0.0
    growth = (float(last["log2_capital"]) - base) / n
    s_columns = [key for key in last if key.startswith("s_")]
    evidence = {}
    for key in s_columns:
        values = [float(row[key]) for row in rows[-3:]]
        evidence[key[2:]] = len(values) == 3 and all(a < b for a, b in zip(values, values[1:]))
    return TraceReport(
        config=header.config if header is not None else {},
        checkpoints=len(rows),
        final_n=n,
        initial_capital=format_rational(capital),
        growth_rate=format_float(growth),
        rho=format_float(int(last["full_wins"]) / n),
        exponent=format_float(growth / math.log2(size)),
        success_evidence=evidence,
        parity_losses=int(last["parity_losses"]),
    )
