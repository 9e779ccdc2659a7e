"""Parameters shared by the builtin gamblers."""

from dataclasses import dataclass
from fractions import Fraction

from src.core_model.alphabet import AlphabetDescriptor
from src.core_model.bets import BetDistribution

DEFAULT_HEDGE = Fraction(1, 64)


@dataclass(frozen=True)
class PhiTrackerParams:
    """Head count h, block width L and hedge epsilon of a Phi_h gambler."""

    h: int
    block_bits: int = 1
    hedge: Fraction = DEFAULT_HEDGE

    def __post_init__(self) -> None:
        if self.h < 2:
            raise ValueError(f"the Phi-tracker needs h >= 2, got {self.h}")
        if self.block_bits < 1:
            raise ValueError(f"L must be >= 1, got {self.block_bits}")
        hedge = Fraction(self.hedge)
        if not 0 < hedge < 1:
            raise ValueError(f"hedge must lie in (0, 1), got {hedge}")
        object.__setattr__(self, "hedge", hedge)

    @property
    def alphabet(self) -> AlphabetDescriptor:
        """{0,1}^L plus the marker."""
        return AlphabetDescriptor(block_bits=self.block_bits, has_dollar=True)

    def nu(self) -> BetDistribution:
        return BetDistribution.nu(self.alphabet, self.hedge)

    def chi(self, symbol: int) -> BetDistribution:
        return BetDistribution.chi(self.alphabet, symbol, self.hedge)
