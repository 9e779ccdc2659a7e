"""Closed-form densities, limits and dimension bounds, with exact convergence tables."""

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable

from src.sequence_forge.boundaries import intervals_below, phi_boundaries
from src.sequence_forge.primes import prime
from src.shared.rationals import format_float, format_rational


def beta(h: int, n: int) -> Fraction:
    """Share of [0, n-1] covered by the closed odd intervals [s_k, t_k]."""
    if n < 1:
        raise ValueError(f"beta needs n >= 1, got {n}")
    covered = 0
    for k, s_k, t_k in intervals_below(h, n):
        if k % 2:
            covered += min(t_k, n - 1) - s_k + 1
    return Fraction(covered, n)


def delta_limits(h: int) -> tuple[Fraction, Fraction]:
    """Return (delta_1, delta_2), the limits of beta/(h+1) along t_{2k+1} and s_{2k+1}."""
    quartic = (h + 1) ** 4 - 1
    return Fraction((h + 1) ** 2, quartic), Fraction(1, h * (h + 1) * quartic)


def beta_and_limits(h: int, n: int) -> tuple[Fraction, Fraction, Fraction]:
    """Return (beta(n), delta_1, delta_2)."""
    return (beta(h, n), *delta_limits(h))


def rho_limits(h: int) -> tuple[Fraction, Fraction]:
    """Return (rho_1, rho_2), the full-win densities of the tracker at t_k and s_k."""
    return Fraction(1, h * (h + 2)), Fraction(1, h * h * (h + 1) * (h + 2))


@dataclass(frozen=True)
class BoundSet:
    """Closed forms of the adaptive/oblivious separation for one (h, L)."""

    h: int
    block_bits: int
    rho_1: Fraction
    rho_2: Fraction
    delta_1: Fraction
    delta_2: Fraction
    adaptive_upper: float
    adaptive_strong_upper: float
    oblivious_lower: float
    oblivious_strong_lower: float
    hierarchy_upper: Fraction

    @property
    def separation(self) -> float:
        """Oblivious lower bound minus adaptive upper bound; positive when they separate."""
        return self.oblivious_lower - self.adaptive_upper

    def as_dict(self) -> dict[str, str]:
        out: dict[str, str] = {"h": str(self.h), "L": str(self.block_bits)}
        for name in ("rho_1", "rho_2", "delta_1", "delta_2", "hierarchy_upper"):
            out[name] = format_rational(getattr(self, name))
        for name in ("adaptive_upper", "adaptive_strong_upper", "oblivious_lower", "oblivious_strong_lower", "separation"):
            out[name] = format_float(getattr(self, name))
        return out


def bound_evaluators(h: int, block_bits: int = 1) -> BoundSet:
    """Evaluate the adaptive upper, oblivious lower and hierarchy bounds."""
    rho_1, rho_2 = rho_limits(h)
    delta_1, delta_2 = delta_limits(h)
    scale = block_bits / math.log2(2**block_bits + 1)
    return BoundSet(
        h=h,
        block_bits=block_bits,
        rho_1=rho_1,
        rho_2=rho_2,
        delta_1=delta_1,
        delta_2=delta_2,
        adaptive_upper=scale * float(1 - rho_1),
        adaptive_strong_upper=scale * float(1 - rho_2),
        oblivious_lower=scale * float(1 - delta_1),
        oblivious_strong_lower=scale * float(1 - delta_2),
        hierarchy_upper=1 - Fraction(1, prime(h + 1)),
    )


def tracker_growth_limit(h: int, block_bits: int, hedge: Fraction, rho: Fraction) -> float:
    """log2 M for full-win density rho: wins pay (2^L+1)(1-eps), other steps (2^L+1)/2^L (1-eps)."""
    size = 2**block_bits + 1
    win = math.log2(size * (1 - hedge))
    plain = math.log2(Fraction(size, 2**block_bits) * (1 - hedge))
    return float(rho) * win + float(1 - rho) * plain


def tracker_full_wins(h: int, n: int) -> int:
    """Full wins of the tracker over X[0..n-1].

    Every parity index of intervals k >= 1 is a win, and so is the marker
    t_k of every even interval k >= 2, where the tracker's pending symbol is
    the marker s_k it just read.
    """
    wins = 0
    for k, s_k, t_k in intervals_below(h, n):
        if k == 0:
            continue
        last = min(t_k - 1, n - 1)
        if last > s_k:
            wins += last // (h + 1) - s_k // (h + 1)
        if k % 2 == 0 and t_k < n:
            wins += 1
    return wins


def convergence_rows(h: int, k_max: int) -> list[dict[str, str]]:
    """beta/(h+1) at s_k, t_k of odd intervals and the tracker's rho at every boundary."""
    delta_1, delta_2 = delta_limits(h)
    rows = []
    for k in range(k_max + 1):
        s_k, t_k = phi_boundaries(h, k)
        for label, n, limit in (("s", s_k, delta_2), ("t", t_k, delta_1)):
            row = {
                "k": str(k),
                "point": f"{label}_{k}",
                "n": str(n),
                "rho": format_float(tracker_full_wins(h, n) / n),
                "beta_scaled": "",
                "limit": "",
            }
            if k % 2:
                row["beta_scaled"] = format_float(float(beta(h, n) / (h + 1)))
                row["limit"] = format_rational(limit)
            rows.append(row)
    return rows


def write_rows_csv(rows: Iterable[dict[str, str]], stream: IO[str]) -> None:
    """Write dict rows with the keys of the first row as header."""
    rows = list(rows)
    if not rows:
        return
    writer = csv.DictWriter(stream, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
