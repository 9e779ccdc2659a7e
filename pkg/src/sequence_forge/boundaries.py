"""Interval boundaries and index arithmetic of the Phi family.

Index k interval: s_k = h (h+1)^{2k}, t_k = (h+1)^{2k+1}. Inside the open
interval (s_k, t_k) every index divisible by h+1 is a parity index.
"""

from typing import Iterator, Optional

from src.shared.errors import IndexOverflowError

INT64_MAX = (1 << 63) - 1


def phi_boundaries(h: int, k: int) -> tuple[int, int]:
    """Return (s_k, t_k) = (h (h+1)^{2k}, (h+1)^{2k+1}).

    Raises:
        IndexOverflowError: When t_k does not fit a signed 64-bit index.
    """
    if h < 2:
        raise ValueError(f"the Phi family needs h >= 2, got {h}")
    if k < 0:
        raise ValueError(f"interval index must be >= 0, got {k}")
    base = (h + 1) ** (2 * k)
    s_k, t_k = h * base, (h + 1) * base
    if t_k > INT64_MAX:
        raise IndexOverflowError(f"t_{k} for h={h} exceeds the 64-bit index width")
    return s_k, t_k


def intervals_below(h: int, stop: int) -> Iterator[tuple[int, int, int]]:
    """Yield (k, s_k, t_k) for every interval with s_k < stop."""
    k = 0
    while True:
        s_k, t_k = phi_boundaries(h, k)
        if s_k >= stop:
            return
        yield k, s_k, t_k
        k += 1


def boundary_points(h: int, n_max: int) -> list[int]:
    """Every s_k and t_k that is <= n_max, ascending."""
    points: list[int] = []
    for _, s_k, t_k in intervals_below(h, n_max + 1):
        points.append(s_k)
        if t_k <= n_max:
            points.append(t_k)
    return points


def interval_of(h: int, n: int) -> Optional[int]:
    """Return k with s_k < n < t_k, or None."""
    for k, s_k, t_k in intervals_below(h, n):
        if s_k < n < t_k:
            return k
    return None


def is_marker(h: int, n: int) -> bool:
    """Return True when n is some s_k or t_k."""
    for _, s_k, t_k in intervals_below(h, n + 1):
        if n in (s_k, t_k):
            return True
    return False


def parity_interval(h: int, n: int) -> Optional[int]:
    """Return k when n is an overwritten parity index of interval k, else None."""
    if n % (h + 1):
        return None
    return interval_of(h, n)


def reference_multipliers(h: int, k: int) -> tuple[int, ...]:
    """Multipliers i of n/(h+1) read by a parity index of interval k."""
    return (*range(1, h - 1), h - (k % 2))


def phi_references(h: int, n: int) -> tuple[int, ...]:
    """Indices whose XOR defines parity index n; empty for other indices."""
    k = parity_interval(h, n)
    if k is None:
        return ()
    q = n // (h + 1)
    return tuple(i * q for i in reference_multipliers(h, k))
