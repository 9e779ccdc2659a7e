"""Memoized random-access sequences: raw, Phi_h and F_{h+1}.

Symbols are produced in chunks and appended to a flat memo. Growth is
serialized by a lock; reads of an already computed prefix take no lock.
"""

import logging
import threading
from dataclasses import dataclass
from typing import Literal, Optional, Protocol

import numpy as np

from src.core_model.alphabet import AlphabetDescriptor
from src.sequence_forge.boundaries import INT64_MAX, intervals_below, reference_multipliers
from src.sequence_forge.memo import ByteBuffer, PackedBitBuffer, SymbolBuffer
from src.sequence_forge.primes import prime, valuations
from src.sequence_forge.source import BitSource
from src.shared.errors import IndexOverflowError

logger = logging.getLogger("sequence_forge")

Family = Literal["raw", "phi", "f"]

MIN_CHUNK = 1 << 12


class Generator(Protocol):
    """Computes symbols [start, stop) given the memoized prefix [0, start)."""

    def fill(self, prefix: np.ndarray, start: int, stop: int) -> np.ndarray: ...


@dataclass(frozen=True)
class RawGenerator:
    """The base symbols themselves."""

    source: BitSource
    block_bits: int

    def fill(self, prefix: np.ndarray, start: int, stop: int) -> np.ndarray:
        return self.source.symbols(start, stop, self.block_bits)


@dataclass(frozen=True)
class PhiGenerator:
    """Phi_h(S): markers at s_k, t_k and parity indices inside (s_k, t_k).

    Every other index copies S at the same index. Referenced indices of a
    parity index in (s_k, t_k) lie in (t_{k-1}, s_k) and are never
    overwritten, so they can be read straight from the chunk being built.
    """

    source: BitSource
    h: int
    block_bits: int

    def fill(self, prefix: np.ndarray, start: int, stop: int) -> np.ndarray:
        h = self.h
        dollar = 1 << self.block_bits
        full = np.concatenate([prefix[:start], self.source.symbols(start, stop, self.block_bits)])
        for k, s_k, t_k in intervals_below(h, stop):
            for marker in (s_k, t_k):
                if start <= marker < stop:
                    full[marker] = dollar
            lo = max(s_k + 1, start)
            hi = min(t_k, stop)
            if lo >= hi:
                continue
            first = lo + (-lo) % (h + 1)
            if first >= hi:
                continue
            parity = np.arange(first, hi, h + 1, dtype=np.int64)
            q = parity // (h + 1)
            value = np.zeros(parity.size, dtype=np.uint8)
            for i in reference_multipliers(h, k):
                value ^= full[i * q]
            full[parity] = value
        return full[start:stop]


@dataclass(frozen=True)
class FGenerator:
    """F_{h+1}(S) over {0,1}.

    F[0] = 0; F[q p + r] = S[q (p - 1) + r] for 0 < r < p; and
    F[q p] = XOR_k F[q p_k] for q >= 1, with p = p_{h+1}. Parity indices are
    filled in order of their p-valuation, so their parents are always ready.
    """

    source: BitSource
    h: int

    def fill(self, prefix: np.ndarray, start: int, stop: int) -> np.ndarray:
        p = prime(self.h + 1)
        idx = np.arange(start, stop, dtype=np.int64)
        q, r = np.divmod(idx, p)
        lo, hi = int(q[0] * (p - 1)), int(q[-1] * (p - 1) + p)
        base = self.source.symbols(lo, hi, 1)
        full = np.concatenate([prefix[:start], np.zeros(stop - start, dtype=np.uint8)])
        plain = r != 0
        full[idx[plain]] = base[q[plain] * (p - 1) + r[plain] - lo]
        multiples = idx[~plain & (idx > 0)]
        if multiples.size:
            levels = valuations(self.h + 1, multiples)
            for level in np.unique(levels):
                self._fill_level(full, multiples[levels == level], p)
        return full[start:stop]

    def _fill_level(self, full: np.ndarray, level: np.ndarray, p: int) -> None:
        if not level.size:
            return
        quotient = level // p
        value = np.zeros(level.size, dtype=np.uint8)
        for k in range(1, self.h + 1):
            value ^= full[quotient * prime(k)]
        full[level] = value



class SymbolSequence:
    """Lazily generated, memoized, random-access sequence over a finite alphabet.

    ``sequence[i]`` is pure: the same (family, parameters, source) always
    yields the same symbol. Stored sequences are finite; indexing past their
    end raises IndexOverflowError.
    """

    def __init__(
        self,
        *,
        family: Family,
        alphabet: AlphabetDescriptor,
        generator: Optional[Generator],
        source: Optional[BitSource] = None,
        h: Optional[int] = None,
        buffer: Optional[SymbolBuffer] = None,
        length_limit: Optional[int] = None,
    ):
        self.family = family
        self.alphabet = alphabet
        self.h = h
        self.source = source
        self._generator = generator
        if length_limit is None and source is not None and family != "f":
            length_limit = source.capacity(alphabet.block_bits)
        self._limit = length_limit
        if buffer is None:
            binary = alphabet.block_bits == 1 and not alphabet.has_dollar
            buffer = PackedBitBuffer() if binary else ByteBuffer()
        self._memo: SymbolBuffer = buffer
        self._lock = threading.Lock()

    @classmethod
    def raw(cls, source: BitSource, block_bits: int = 1) -> "SymbolSequence":
        """The base sequence S over {0,1}^L."""
        return cls(
            family="raw",
            alphabet=AlphabetDescriptor(block_bits=block_bits),
            generator=RawGenerator(source, block_bits),
            source=source,
        )

    @classmethod
    def phi(cls, source: BitSource, h: int, block_bits: int = 1) -> "SymbolSequence":
        """Phi_h(S) over {0,1}^L plus the marker."""
        if h < 2:
            raise ValueError(f"the Phi family needs h >= 2, got {h}")
        return cls(
            family="phi",
            alphabet=AlphabetDescriptor(block_bits=block_bits, has_dollar=True),
            generator=PhiGenerator(source, h, block_bits),
            source=source,
            h=h,
        )

    @classmethod
    def f(cls, source: BitSource, h: int) -> "SymbolSequence":
        """F_{h+1}(S) over {0,1}."""
        if h < 1:
            raise ValueError(f"the F family needs h >= 1, got {h}")
        return cls(
            family="f",
            alphabet=AlphabetDescriptor(block_bits=1),
            generator=FGenerator(source, h),
            source=source,
            h=h,
        )

    @property
    def length_limit(self) -> Optional[int]:
        return self._limit

    def __len__(self) -> int:
        """Number of symbols computed so far."""
        return len(self._memo)

    def __getitem__(self, index: int) -> int:
        if index < 0:
            raise IndexError(f"negative index {index}")
        if len(self._memo) <= index:
            self._ensure_length_is_at_least(index + 1)
        return self._memo.get(index)

    def prefix(self, stop: int) -> np.ndarray:
        """Return symbols [0, stop) as a uint8 array."""
        if len(self._memo) < stop:
            self._ensure_length_is_at_least(stop)
        return self._memo.view(stop)

    def _ensure_length_is_at_least(self, length: int) -> None:
        if length > INT64_MAX:
            raise IndexOverflowError(f"index {length - 1} exceeds the 64-bit index width")
        if self._limit is not None and length > self._limit:
            raise IndexOverflowError(
                f"sequence holds {self._limit} symbols, index {length - 1} requested"
            )
        with self._lock:
            current = len(self._memo)
            if current >= length:
                return
            if self._generator is None:
                raise IndexOverflowError(f"stored sequence ends at {current}")
            target = max(length, 2 * current, MIN_CHUNK)
            target += -target % 8
            if self._limit is not None:
                target = min(target, self._limit)
            chunk = self._generator.fill(self._memo.view(current), current, target)
            self._memo.append(chunk)
            logger.debug(f"{self.family} sequence grown to {target} symbols")

    def describe(self) -> dict[str, object]:
        """Parameters identifying the sequence."""
        return {
            "family": self.family,
            "h": self.h,
            "block_bits": self.alphabet.block_bits,
            "has_dollar": self.alphabet.has_dollar,
            "source": self.source.describe() if self.source else None,
        }


def make_sequence(family: Family, *, h: Optional[int], block_bits: int, seed: int) -> SymbolSequence:
    """Build a seeded sequence of the given family."""
    source = BitSource.seeded(seed)
    if family == "raw":
        return SymbolSequence.raw(source, block_bits)
    if family == "phi":
        if h is None:
            raise ValueError("the Phi family needs h")
        return SymbolSequence.phi(source, h, block_bits)
    if family == "f":
        if h is None:
            raise ValueError("the F family needs h")
        if block_bits != 1:
            raise ValueError(f"the F family is binary, got L={block_bits}")
        return SymbolSequence.f(source, h)
    raise ValueError(f"unknown sequence family {family!r}")


def phi_symbol(sequence: SymbolSequence, n: int) -> int:
    """Return Phi_h(S)[n]."""
    if sequence.family != "phi":
        raise ValueError(f"expected a phi sequence, got {sequence.family}")
    return sequence[n]


def f_symbol(sequence: SymbolSequence, n: int) -> int:
    """Return F_{h+1}(S)[n]."""
    if sequence.family != "f":
        raise ValueError(f"expected an f sequence, got {sequence.family}")
    return sequence[n]
