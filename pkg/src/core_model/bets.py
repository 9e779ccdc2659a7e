"""Exact-rational bet distributions and the builtin gamblers' bet shapes."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from src.core_model.alphabet import AlphabetDescriptor
from src.shared.errors import NonStochasticBetsError


@dataclass(frozen=True)
class BetDistribution:
    """Probability vector over the symbols of an alphabet, in symbol order."""

    probabilities: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        probabilities = tuple(Fraction(p) for p in self.probabilities)
        object.__setattr__(self, "probabilities", probabilities)
        if any(p < 0 for p in probabilities):
            raise NonStochasticBetsError(f"negative bet entry in {self.render()}")
        total = sum(probabilities, Fraction(0))
        if total != 1:
            raise NonStochasticBetsError(f"bet row sums to {total}, not 1: {self.render()}")

    def __getitem__(self, symbol: int) -> Fraction:
        return self.probabilities[symbol]

    def __len__(self) -> int:
        return len(self.probabilities)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.probabilities)

    def render(self) -> str:
        """Render as space-separated ``num/den`` tokens."""
        return " ".join(
            f"{p.numerator}/{p.denominator}" if p.denominator != 1 else str(p.numerator)
            for p in self.probabilities
        )

    def concentrated_symbol(self, hedge: Optional[Fraction]) -> Optional[int]:
        """Return ``a`` when this row is exactly chi_a for ``hedge``, else None.

        The comparison is structural on exact rationals, never a float test.
        """
        if hedge is None or len(self.probabilities) < 2:
            return None
        top = 1 - hedge
        rest = hedge / (len(self.probabilities) - 1)
        candidates = [s for s, p in enumerate(self.probabilities) if p == top]
        for symbol in candidates:
            if all(p == rest for s, p in enumerate(self.probabilities) if s != symbol):
                return symbol
        return None

    @classmethod
    def from_weights(cls, weights: Sequence[int]) -> "BetDistribution":
        """Normalize nonnegative integer weights into a distribution."""
        total = sum(weights)
        if total <= 0:
            raise NonStochasticBetsError(f"weights must have a positive sum, got {list(weights)}")
        return cls(tuple(Fraction(w, total) for w in weights))

    @classmethod
    def uniform(cls, alphabet: AlphabetDescriptor) -> "BetDistribution":
        """Fair bet over every symbol."""
        return cls(tuple(Fraction(1, alphabet.size) for _ in range(alphabet.size)))

    @classmethod
    def nu(cls, alphabet: AlphabetDescriptor, hedge: Fraction) -> "BetDistribution":
        """Put ``hedge`` on the marker and share the rest evenly over the blocks."""
        if not alphabet.has_dollar:
            raise ValueError("nu needs an alphabet with the marker symbol")
        block = (1 - hedge) / alphabet.blocks
        return cls(tuple([block] * alphabet.blocks + [Fraction(hedge)]))

    @classmethod
    def chi(cls, alphabet: AlphabetDescriptor, symbol: int, hedge: Fraction) -> "BetDistribution":
        """Put ``1 - hedge`` on ``symbol`` and share ``hedge`` over the others."""
        if not 0 <= symbol < alphabet.size:
            raise ValueError(f"symbol {symbol} outside alphabet of size {alphabet.size}")
        rest = Fraction(hedge) / (alphabet.size - 1)
        return cls(
            tuple(1 - Fraction(hedge) if s == symbol else rest for s in range(alphabet.size))
        )
