"""Prime table with the p_0 = 1 convention, and prime valuations."""

import math
from functools import lru_cache

import numpy as np

from src.shared.errors import ZeroArgumentError


class PrimeTable:
    """p_0 = 1, p_1 = 2, p_2 = 3, ... for the first ``count`` primes."""

    def __init__(self, count: int):
        if count < 1:
            raise ValueError(f"count must be >= 1, got {count}")
        bound = 16
        if count >= 6:
            bound = int(count * (math.log(count) + math.log(math.log(count)))) + 16
        sieve = np.ones(bound + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, math.isqrt(bound) + 1):
            if sieve[p]:
                sieve[p * p :: p] = False
        found = np.flatnonzero(sieve)[:count]
        self._values = (1, *(int(p) for p in found))

    def __getitem__(self, k: int) -> int:
        return self._values[k]

    def __len__(self) -> int:
        return len(self._values)

    def first(self, count: int) -> tuple[int, ...]:
        """Return p_1 .. p_count."""
        return self._values[1 : count + 1]


@lru_cache(maxsize=8)
def primes(count: int = 64) -> PrimeTable:
    """Return a shared table of at least ``count`` primes."""
    return PrimeTable(max(count, 64))


def prime(k: int) -> int:
    """Return p_k (p_0 = 1)."""
    return primes(k + 1)[k]


def valuation(k: int, n: int) -> int:
    """Multiplicity of p_k in n.

    Raises:
        ZeroArgumentError: For n = 0, where the multiplicity is unbounded.
    """
    if k < 1:
        raise ValueError(f"valuation needs a prime index k >= 1, got {k}")
    if n == 0:
        raise ZeroArgumentError("valuation of 0 is undefined")
    if n < 0:
        raise ValueError(f"valuation needs n >= 1, got {n}")
    p = prime(k)
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return count


def valuations(k: int, values: np.ndarray) -> np.ndarray:
    """Vectorized valuation over an array of positive integers."""
    p = prime(k)
    values = np.asarray(values, dtype=np.int64).copy()
    if np.any(values <= 0):
        raise ZeroArgumentError("valuation needs positive arguments")
    result = np.zeros(values.shape, dtype=np.int64)
    mask = values % p == 0
    while mask.any():
        result[mask] += 1
        values[mask] //= p
        mask = values % p == 0
    return result
