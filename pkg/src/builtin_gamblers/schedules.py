"""Movement schedules of the Phi-tracker's last trailing head and their tracking oracle.

The tracker runs through modes -1, 0, 1, 2, 3, 0, 1, ... switching each time
the leading head reads the marker. Mode -1 covers steps [0, s_0), mode 0
covers [s_0, t_0), mode 1 covers [t_0, s_1) and so on: modes 0 and 2 are the
betting intervals (even and odd k), modes 1 and 3 the repositioning legs
between them. In each mode head h-1 moves on the first ``moves`` of every
``period`` steps, counted from the step the mode was entered.

For a parity index l in (s_k, t_k) the bet on X[l] needs the observation of
head h-1 at step l - 1 to sit on (h - (k mod 2)) l / (h + 1).
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.sequence_forge.boundaries import phi_boundaries

logger = logging.getLogger("builtin_gamblers")

MODES = (-1, 0, 1, 2, 3)
BETTING_MODES = (0, 2)


@dataclass(frozen=True)
class ModeSchedule:
    """Per-mode (moves, period) of head h-1, listed for modes -1, 0, 1, 2, 3."""

    legs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if len(self.legs) != len(MODES):
            raise ValueError(f"a schedule has {len(MODES)} legs, got {len(self.legs)}")
        for moves, period in self.legs:
            if period < 1 or not 0 <= moves <= period:
                raise ValueError(f"invalid leg ({moves}, {period})")

    def leg(self, mode: int) -> tuple[int, int]:
        """Return (moves, period) of ``mode``."""
        return self.legs[mode + 1]

    def replace(self, mode: int, leg: tuple[int, int]) -> "ModeSchedule":
        """Return a copy with one leg changed."""
        legs = list(self.legs)
        legs[mode + 1] = leg
        return ModeSchedule(tuple(legs))

    def as_list(self) -> list[tuple[int, int]]:
        return list(self.legs)


def leg_period(h: int) -> int:
    """(h + 1)(h^2 + h - 1) = h^3 + 2h^2 - 1 steps per repositioning cycle."""
    return h**3 + 2 * h**2 - 1


def literal_schedule(h: int) -> ModeSchedule:
    """Constants as stated in the construction: modes -1, 0 and 2 share a speed."""
    period = leg_period(h)
    slow = (h - 1, h + 1)
    return ModeSchedule((slow, slow, (h**3 + h**2 - h + 1, period), slow, (h**3 - 2 * h, period)))


def derived_schedule(h: int) -> ModeSchedule:
    """Constants derived from the required displacement of each leg.

    A betting interval with tracking ratio j/(h+1) needs speed j/(h+1); a leg
    from ratio j_prev to ratio j_next moves j_next h (h+1) - j_prev of every
    leg period.
    """
    period = leg_period(h)

    def leg(j_prev: int, j_next: int) -> tuple[int, int]:
        return j_next * h * (h + 1) - j_prev, period

    return ModeSchedule(
        (
            (h - 1, h + 1),
            (h, h + 1),
            leg(h, h - 1),
            (h - 1, h + 1),
            leg(h - 1, h),
        )
    )


def mode_segments(h: int, k_max: int) -> list[tuple[int, int, int]]:
    """Return (mode, first step, end step) for every mode segment up to t_{k_max}."""
    edges = [0]
    for k in range(k_max + 1):
        edges.extend(phi_boundaries(h, k))
    segments = []
    for j in range(len(edges) - 1):
        mode = -1 if j == 0 else (j - 1) % 4
        segments.append((mode, edges[j], edges[j + 1]))
    return segments


def head_positions(schedule: ModeSchedule, h: int, steps: np.ndarray, k_max: int) -> np.ndarray:
    """Closed-form pi_{h-1}(N): moves made during steps 0 .. N-1, for N <= t_{k_max}."""
    steps = np.asarray(steps, dtype=np.int64)
    out = np.zeros(steps.shape, dtype=np.int64)
    base = 0
    for mode, first, end in mode_segments(h, k_max):
        moves, period = schedule.leg(mode)
        inside = (steps > first) & (steps <= end)
        elapsed = steps[inside] - first
        out[inside] = base + (elapsed // period) * moves + np.minimum(elapsed % period, moves)
        length = end - first
        base += (length // period) * moves + min(length % period, moves)
    return out


@dataclass(frozen=True)
class OracleFailure:
    """One parity index whose referenced position the schedule misses."""

    interval: int
    index: int
    required: int
    actual: int


def tracking_oracle(
    schedule: ModeSchedule, h: int, k_max: int = 4, limit: Optional[int] = None
) -> list[OracleFailure]:
    """Check every parity index of intervals 1..k_max against the schedule.

    Returns at most ``limit`` failures (all of them when None).
    """
    failures: list[OracleFailure] = []
    for k in range(1, k_max + 1):
        s_k, t_k = phi_boundaries(h, k)
        first = s_k + (-s_k) % (h + 1)
        if first == s_k:
            first += h + 1
        parity = np.arange(first, t_k, h + 1, dtype=np.int64)
        if not parity.size:
            continue
        actual = head_positions(schedule, h, parity - 1, k_max)
        required = (h - (k % 2)) * (parity // (h + 1))
        for index in np.flatnonzero(actual != required):
            failures.append(
                OracleFailure(k, int(parity[index]), int(required[index]), int(actual[index]))
            )
            if limit is not None and len(failures) >= limit:
                return failures
    return failures
