"""Sequences restricted to a known index set."""

from dataclasses import dataclass

import numpy as np

from src.sequence_forge.sequence import SymbolSequence
from src.structure_lab.index_set import IndexSet


@dataclass(frozen=True)
class MaskedString:
    """S[A] over [0, horizon]: S[i] for i in A, the placeholder 0 elsewhere."""

    horizon: int
    known: IndexSet
    symbols: np.ndarray

    def __getitem__(self, index: int) -> int:
        if not 0 <= index <= self.horizon:
            raise IndexError(f"index {index} outside [0, {self.horizon}]")
        return int(self.symbols[index])

    def __len__(self) -> int:
        return self.horizon + 1

    def is_known(self, index: int) -> bool:
        return index in self.known


def masked_string(sequence: SymbolSequence, known: IndexSet, horizon: int) -> MaskedString:
    """Restrict ``sequence`` to ``known`` within [0, horizon]."""
    known = known.clip(0, horizon)
    full = sequence.prefix(horizon + 1)
    symbols = np.zeros(horizon + 1, dtype=np.uint8)
    for lo, hi in known.intervals:
        symbols[lo : hi + 1] = full[lo : hi + 1]
    symbols.setflags(write=False)
    return MaskedString(horizon=horizon, known=known, symbols=symbols)
