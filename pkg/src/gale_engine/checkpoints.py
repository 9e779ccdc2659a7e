"""Checkpoint schedules.

A schedule is written ``boundaries``, ``geometric:<r>`` or an explicit
comma-separated list of step counts.
"""

import math
from typing import Iterable, Literal, Optional

from src.sequence_forge.boundaries import boundary_points
from src.sequence_forge.primes import prime
from src.shared.errors import EmptyScheduleError


def normalize_checkpoints(points: Iterable[int], n_max: int) -> list[int]:
    """Sort, deduplicate and clip ``points`` to [1, n_max].

    Raises:
        EmptyScheduleError: When nothing is left.
    """
    kept = sorted({int(p) for p in points if 1 <= int(p) <= n_max})
    if not kept:
        raise EmptyScheduleError(f"no checkpoint lies in [1, {n_max}]")
    return kept


def geometric_checkpoints(ratio: float, n_max: int) -> list[int]:
    """Return the distinct values ceil(r^j) <= n_max for j = 0, 1, ..."""
    if ratio <= 1:
        raise ValueError(f"geometric ratio must exceed 1, got {ratio}")
    points: list[int] = []
    j = 0
    while True:
        value = math.ceil(ratio**j)
        if value > n_max:
            return points
        if not points or value != points[-1]:
            points.append(value)
        j += 1


def boundary_checkpoints(family: Literal["phi", "f"], h: int, n_max: int) -> list[int]:
    """Interval boundaries: every s_k, t_k for Phi, powers of p_{h+1} for F."""
    if family == "phi":
        return [n for n in boundary_points(h, n_max) if n >= 1]
    p = prime(h + 1)
    points = []
    value = p
    while value <= n_max:
        points.append(value)
        value *= p
    return points


def parse_schedule(
    text: str,
    n_max: int,
    *,
    family: Optional[Literal["phi", "f"]] = None,
    h: Optional[int] = None,
) -> list[int]:
    """Parse a schedule description into normalized checkpoints.

    Raises:
        EmptyScheduleError: When the schedule yields no checkpoint.
    """
    text = text.strip()
    if text == "boundaries":
        if family is None or h is None:
            raise ValueError("a boundaries schedule needs a sequence family and h")
        points = boundary_checkpoints(family, h, n_max)
    elif text.startswith("geometric:"):
        points = geometric_checkpoints(float(text.split(":", 1)[1]), n_max)
    else:
        try:
            points = [int(part) for part in text.split(",") if part.strip()]
        except ValueError as exc:
            raise ValueError(f"cannot parse checkpoint schedule {text!r}") from exc
    return normalize_checkpoints(points, n_max)
