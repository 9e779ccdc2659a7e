"""Leaf sets of the F_{h+1} parity trees and their closures."""

from collections import deque
from typing import Iterable, Optional, Sequence

from src.sequence_forge.primes import prime, valuation
from src.structure_lab.index_set import IndexSet


def hier_leaf_set(h: int, d: int, m: int, n: int, i: int, *, strict: bool = False) -> IndexSet:
    """V_i(m, n): follow child i from every k in [m, n] down to depth d.

    An index k with p_{h+1}-valuation v maps to (p_i/p_{h+1})^min(v, d) k.
    Indices deeper than d keep their depth-d node unless ``strict`` drops them.
    """
    if not 1 <= i <= h:
        raise ValueError(f"child index must lie in 1..{h}, got {i}")
    if m < 1 or m > n:
        raise ValueError(f"expected 1 <= m <= n, got m={m}, n={n}")
    p, p_i = prime(h + 1), prime(i)
    points = []
    for k in range(m, n + 1):
        v = valuation(h + 1, k)
        if strict and v > d:
            continue
        e = min(v, d)
        points.append(k // p**e * p_i**e)
    return IndexSet.from_points(points)


def closure(leaves: Iterable[int], h: int, horizon: int) -> IndexSet:
    """Every l p^(a_1+...+a_h) / (p_1^a_1 ... p_h^a_h) <= horizon that is an integer.

    Each step multiplies by p/p_k > 1, so values only grow and the search can
    stop at the horizon.
    """
    p = prime(h + 1)
    factors = [prime(k) for k in range(1, h + 1)]
    seen = {x for x in leaves if x <= horizon}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for p_k in factors:
            if x % p_k:
                continue
            y = x // p_k * p
            if y <= horizon and y not in seen:
                seen.add(y)
                queue.append(y)
    return IndexSet.from_points(seen)


def disjointness_check(u: IndexSet, closures: Sequence[IndexSet]) -> Optional[int]:
    """Return the smallest j (1-based) with U disjoint from closure j, or None on full coverage."""
    for j, closed in enumerate(closures, start=1):
        if u.isdisjoint(closed):
            return j
    return None
