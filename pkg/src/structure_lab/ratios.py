"""Ratio sets T_i and the constants zeta and gamma derived from them."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from src.sequence_forge.primes import prime

SAFETY = Fraction(99, 100)


@dataclass(frozen=True)
class RatioConstants:
    """T_1..T_h, the gap constant zeta and the window constant gamma."""

    h: int
    d: int
    ratios: tuple[frozenset[Fraction], ...]
    zeta: Fraction
    gamma: Fraction

    @property
    def threshold(self) -> Optional[int]:
        """Smallest n with n > 1 / (gamma zeta - 2 (1 - gamma)); None when the bound is vacuous."""
        margin = self.gamma * self.zeta - 2 * (1 - self.gamma)
        if margin <= 0:
            return None
        return math.floor(1 / margin) + 1


def ratio_set(h: int, d: int, i: int) -> frozenset[Fraction]:
    """T_i: ratios (p_i/p)^t prod_k (p/p_k)^(a_k) below 1, for t in 1..d."""
    p = prime(h + 1)
    steps = [Fraction(p, prime(k)) for k in range(1, h + 1)]
    found: set[Fraction] = set()
    frontier = [Fraction(prime(i), p) ** t for t in range(1, d + 1)]
    while frontier:
        value = frontier.pop()
        if value >= 1 or value in found:
            continue
        found.add(value)
        frontier.extend(value * step for step in steps)
    return frozenset(found)


def ratio_constants(h: int, d: int) -> RatioConstants:
    """Enumerate T_1..T_h; zeta = 99/100 of the least gap, gamma = midpoint of (2/(2+zeta), 1)."""
    if h < 1 or d < 0:
        raise ValueError(f"expected h >= 1 and d >= 0, got h={h}, d={d}")
    ratios = tuple(ratio_set(h, d, i) for i in range(1, h + 1))
    ordered = sorted(set().union(*ratios))
    if len(ordered) < 2:
        zeta = Fraction(1, 2)
    else:
        zeta = min(b - a for a, b in zip(ordered, ordered[1:])) * SAFETY
    gamma = (Fraction(2) / (2 + zeta) + 1) / 2
    return RatioConstants(h=h, d=d, ratios=ratios, zeta=zeta, gamma=gamma)
