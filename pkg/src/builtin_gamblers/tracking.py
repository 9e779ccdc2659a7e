"""Check a recorded Phi-tracker run against the positions its bets need."""

import logging
from typing import Callable, Optional

import numpy as np

from src.builtin_gamblers.phi_tracker import tracker_mode
from src.config.model import TrackingReport, TrackingViolation
from src.core_model.spec import State
from src.gale_engine.engine import RunTrace
from src.sequence_forge.boundaries import boundary_points, intervals_below, phi_boundaries
from src.sequence_forge.sequence import SymbolSequence
from src.shared.errors import TraceTooShortError

logger = logging.getLogger("builtin_gamblers")


def verify_tracking(
    trace: RunTrace,
    h: int,
    *,
    sequence: Optional[SymbolSequence] = None,
    mode_of: Optional[Callable[[State], int]] = tracker_mode,
) -> TrackingReport:
    """Compare head positions and bets at every parity index after warm-up.

    At a parity index l of interval k >= 1 the observation taken at step
    l - 1 must come from i l/(h+1) for heads i <= h-2 and from
    (h - (k mod 2)) l/(h+1) for head h-1. With ``sequence`` the bet on l is
    also checked to concentrate on the XOR of those symbols. Violations are
    data: every one is listed.

    Raises:
        TraceTooShortError: When the trace carries no step record.
    """
    if trace.steps is None:
        raise TraceTooShortError("tracking needs a trace recorded with per-step positions")
    log = trace.steps
    horizon = log.steps
    warmup_end = phi_boundaries(h, 0)[1]
    violations: list[TrackingViolation] = []
    checked = 0
    symbols = sequence.prefix(horizon) if sequence is not None else None

    for k, s_k, t_k in intervals_below(h, horizon):
        if k == 0:
            continue
        parity = np.arange(s_k + (h + 1), min(t_k, horizon), h + 1, dtype=np.int64)
        if not parity.size:
            continue
        q = parity // (h + 1)
        multipliers = [*range(1, h - 1), h - (k % 2)]
        observed = log.positions[parity - 1]
        for head, multiplier in enumerate(multipliers):
            required = multiplier * q
            for index in np.flatnonzero(observed[:, head] != required):
                violations.append(
                    TrackingViolation(
                        index=int(parity[index]),
                        interval=k,
                        kind="head",
                        head=head + 1,
                        required=int(required[index]),
                        actual=int(observed[index, head]),
                    )
                )
        if symbols is not None:
            expected = np.zeros(parity.size, dtype=np.int64)
            for multiplier in multipliers:
                expected ^= symbols[multiplier * q].astype(np.int64)
            actual = log.concentrated[parity]
            for index in np.flatnonzero(actual != expected):
                violations.append(
                    TrackingViolation(
                        index=int(parity[index]),
                        interval=k,
                        kind="bet",
                        required=int(expected[index]),
                        actual=int(actual[index]),
                    )
                )
        checked += int(parity.size)

    mode_switches: list[int] = []
    if mode_of is not None:
        modes = [mode_of(log.state_tokens[sid]) for sid in log.states]
        mode_switches = [n for n in range(horizon - 1) if modes[n + 1] != modes[n]]
    markers = boundary_points(h, horizon - 2) if horizon >= 2 else []
    logger.info(f"tracking h={h} up to {horizon}: {checked} parity indices, {len(violations)} violations")
    return TrackingReport(
        h=h,
        horizon=horizon,
        warmup_end=warmup_end,
        checked=checked,
        violations=violations,
        mode_switches=mode_switches,
        marker_positions=markers,
    )
