"""Index sets of the reconstruction and look-back arguments."""

import math
from fractions import Fraction
from typing import Any, Mapping, Sequence

from src.config.model import IndexSetReport
from src.gale_engine.engine import RunTrace
from src.sequence_forge.boundaries import intervals_below, phi_boundaries
from src.shared.errors import TraceTooShortError
from src.structure_lab.index_set import IndexSet, union_all


def u_oblivious(m: int, n: int, speeds: Sequence[Fraction], timer_size: int) -> IndexSet:
    """Union over trailing heads of [floor(eta_i m) - |T|, ceil(eta_i n) + |T|], clipped to N."""
    if not 0 <= m <= n:
        raise ValueError(f"expected 0 <= m <= n, got m={m}, n={n}")
    return IndexSet(
        (math.floor(Fraction(eta) * m) - timer_size, math.ceil(Fraction(eta) * n) + timer_size)
        for eta in speeds
    )


def u_adaptive(m: int, n: int, trace: RunTrace) -> IndexSet:
    """[0, m-1] intersected with the union of [pi_i(m-1), pi_i(m-1) + n - m + 1].

    Raises:
        TraceTooShortError: When the trace has no step record covering step m - 1.
    """
    if not 1 <= m <= n:
        raise ValueError(f"expected 1 <= m <= n, got m={m}, n={n}")
    if trace.steps is None or trace.steps.positions.shape[0] < m:
        raise TraceTooShortError(f"trace does not cover step {m - 1}")
    row = trace.steps.positions[m - 1]
    reach = union_all([IndexSet.span(int(p), int(p) + n - m + 1) for p in row])
    return reach.clip(0, m - 1)


def overwritten_set_A(h: int, n: int) -> IndexSet:
    """Indices of [0, n] that Phi_h overwrites: markers and parity indices."""
    points: list[int] = []
    for _, s_k, t_k in intervals_below(h, n + 1):
        points.append(s_k)
        if t_k <= n:
            points.append(t_k)
        first = s_k + (h + 1) - s_k % (h + 1)
        points.extend(range(first, min(t_k - 1, n) + 1, h + 1))
    return IndexSet.from_points(points)


def phi_ref_sets(h: int, m: int, n: int, k: int) -> dict[int, tuple[IndexSet, IndexSet]]:
    """Map each multiplier j in 1..h to (V_j, W_j) for interval k.

    V_j = {l j/(h+1) : l in (s_k, t_k) n [m, n], l mod (h+1) = 0} and
    W_j = [0, m] minus V_j.
    """
    if m > n:
        raise ValueError(f"expected m <= n, got m={m}, n={n}")
    s_k, t_k = phi_boundaries(h, k)
    lo, hi = max(s_k + 1, m), min(t_k - 1, n)
    first = lo + (-lo) % (h + 1)
    quotients = range(first // (h + 1), hi // (h + 1) + 1) if first <= hi else range(0)
    out = {}
    for j in range(1, h + 1):
        v = IndexSet.from_points(j * q for q in quotients)
        out[j] = (v, IndexSet.span(0, m) - v)
    return out


def index_set_report(
    params: Mapping[str, Any], sets: Mapping[str, IndexSet], verdicts: Mapping[str, Any]
) -> IndexSetReport:
    """Bundle named sets with verdicts for JSON output."""
    return IndexSetReport(
        params=dict(params),
        sets={name: s.as_lists() for name, s in sets.items()},
        verdicts=dict(verdicts),
    )
