"""Append-only symbol buffers behind the sequence memo."""

from typing import Protocol

import numpy as np


class SymbolBuffer(Protocol):
    """Flat append-only storage of computed symbols."""

    def __len__(self) -> int: ...

    def get(self, index: int) -> int: ...

    def view(self, stop: int) -> np.ndarray: ...

    def append(self, chunk: np.ndarray) -> None: ...


class ByteBuffer:
    """One byte per symbol, capacity doubled on growth."""

    def __init__(self, capacity: int = 1 << 12):
        self._data = np.zeros(capacity, dtype=np.uint8)
        self._length = 0

    def __len__(self) -> int:
        return self._length

    def get(self, index: int) -> int:
        return int(self._data[index])

    def view(self, stop: int) -> np.ndarray:
        """Return a read-only view of the first ``stop`` symbols."""
        out = self._data[:stop]
        out = out.view()
        out.setflags(write=False)
        return out

    def append(self, chunk: np.ndarray) -> None:
        needed = self._length + chunk.size
        if needed > self._data.size:
            grown = np.zeros(max(needed, 2 * self._data.size), dtype=np.uint8)
            grown[: self._length] = self._data[: self._length]
            self._data = grown
        self._data[self._length : needed] = chunk
        self._length = needed


class PackedBitBuffer:
    """Binary symbols packed eight per byte, little bit order.

    Appends must keep the length a multiple of 8 until the final append.
    """

    def __init__(self, capacity: int = 1 << 12):
        self._packed = np.zeros(max(capacity // 8, 1), dtype=np.uint8)
        self._length = 0

    def __len__(self) -> int:
        return self._length

    def get(self, index: int) -> int:
        return (int(self._packed[index >> 3]) >> (index & 7)) & 1

    def view(self, stop: int) -> np.ndarray:
        nbytes = (stop + 7) // 8
        return np.unpackbits(self._packed[:nbytes], bitorder="little", count=stop)

    def append(self, chunk: np.ndarray) -> None:
        if self._length % 8:
            raise ValueError("packed buffer is sealed: its length is not a multiple of 8")
        if chunk.size and int(chunk.max()) > 1:
            raise ValueError("packed buffer only stores binary symbols")
        packed = np.packbits(chunk.astype(np.uint8), bitorder="little")
        start = self._length // 8
        needed = start + packed.size
        if needed > self._packed.size:
            grown = np.zeros(max(needed, 2 * self._packed.size), dtype=np.uint8)
            grown[:start] = self._packed[:start]
            self._packed = grown
        self._packed[start:needed] = packed
        self._length += chunk.size

    def packed_bytes(self) -> bytes:
        """Return the packed body, as written to sequence files."""
        return self._packed[: (self._length + 7) // 8].tobytes()
