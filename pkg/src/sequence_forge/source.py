"""Base random sources.

A seeded source stands in for a random base sequence. It is counter-based:
symbols come in blocks of 2^16, each drawn from its own Philox stream keyed
by (seed, L, block), so any index is reachable without generating the prefix
and distinct seeds give independent streams.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Literal, Optional

import numpy as np

from src.shared.errors import IndexOverflowError

logger = logging.getLogger("sequence_forge")

BLOCK = 1 << 16


@lru_cache(maxsize=64)
def _prng_block(seed: int, block_bits: int, block: int) -> np.ndarray:
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(block_bits, block))
    rng = np.random.Generator(np.random.Philox(sequence))
    values = rng.integers(0, 1 << block_bits, size=BLOCK, dtype=np.uint8)
    values.setflags(write=False)
    return values


@lru_cache(maxsize=8)
def _file_bits(path: str) -> np.ndarray:
    raw = np.fromfile(path, dtype=np.uint8)
    bits = np.unpackbits(raw)
    bits.setflags(write=False)
    logger.info(f"loaded {bits.size} bits from {path}")
    return bits


@dataclass(frozen=True)
class BitSource:
    """Deterministic infinite (seeded) or finite (file-backed) stream of L-bit symbols."""

    kind: Literal["prng", "file"] = "prng"
    seed: int = 0
    path: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind == "file" and not self.path:
            raise ValueError("a file-backed source needs a path")
        if self.kind == "prng" and self.seed < 0:
            raise ValueError(f"seed must be nonnegative, got {self.seed}")

    @classmethod
    def seeded(cls, seed: int) -> "BitSource":
        return cls(kind="prng", seed=seed)

    @classmethod
    def from_file(cls, path: "str | Path") -> "BitSource":
        return cls(kind="file", path=str(path))

    def capacity(self, block_bits: int) -> Optional[int]:
        """Number of available symbols, or None when unbounded."""
        if self.kind == "prng":
            return None
        return _file_bits(str(self.path)).size // block_bits

    def symbols(self, start: int, stop: int, block_bits: int) -> np.ndarray:
        """Return base symbols S[start:stop] as uint8 values in [0, 2^L)."""
        if stop <= start:
            return np.zeros(0, dtype=np.uint8)
        if self.kind == "file":
            return self._file_symbols(start, stop, block_bits)
        first, last = start // BLOCK, (stop - 1) // BLOCK
        blocks = [_prng_block(self.seed, block_bits, b) for b in range(first, last + 1)]
        joined = blocks[0] if len(blocks) == 1 else np.concatenate(blocks)
        offset = first * BLOCK
        return np.array(joined[start - offset : stop - offset], dtype=np.uint8)

    def _file_symbols(self, start: int, stop: int, block_bits: int) -> np.ndarray:
        bits = _file_bits(str(self.path))
        if stop * block_bits > bits.size:
            raise IndexOverflowError(
                f"file source {self.path} holds {bits.size // block_bits} symbols, index {stop - 1} requested"
            )
        chunk = bits[start * block_bits : stop * block_bits].reshape(-1, block_bits).astype(np.uint8)
        # first bit of a block is the most significant
        weights = (1 << np.arange(block_bits - 1, -1, -1)).astype(np.uint8)
        return (chunk * weights).sum(axis=1).astype(np.uint8)

    def describe(self) -> str:
        return f"prng:{self.seed}" if self.kind == "prng" else f"file:{self.path}"
