"""Alphabets of L-bit blocks, optionally extended by the marker symbol."""

from dataclasses import dataclass
from typing import Optional

DOLLAR_TOKEN = "$"


@dataclass(frozen=True)
class AlphabetDescriptor:
    """Alphabet {0,1}^L, or {0,1}^L plus the marker ``$``.

    Symbols are integers. ``0 .. 2^L - 1`` are the bit blocks in lexicographic
    order (symbol 0 is the placeholder), and ``2^L`` is the marker when present.
    """

    block_bits: int
    has_dollar: bool = False

    def __post_init__(self) -> None:
        if self.block_bits < 1:
            raise ValueError(f"block_bits must be >= 1, got {self.block_bits}")
        if self.block_bits > 7:
            # one byte per symbol, marker included
            raise ValueError(f"block_bits must be <= 7, got {self.block_bits}")

    @property
    def blocks(self) -> int:
        """Number of bit-block symbols, 2^L."""
        return 1 << self.block_bits

    @property
    def size(self) -> int:
        """Number of symbols, marker included."""
        return self.blocks + (1 if self.has_dollar else 0)

    @property
    def dollar(self) -> Optional[int]:
        """Symbol code of the marker, or None."""
        return self.blocks if self.has_dollar else None

    @property
    def placeholder(self) -> int:
        """Symbol written at unknown positions of a masked string."""
        return 0

    def is_dollar(self, symbol: int) -> bool:
        """Return True when ``symbol`` is the marker."""
        return self.has_dollar and symbol == self.blocks

    def format_symbol(self, symbol: int) -> str:
        """Render a symbol as ``$`` or its L-bit block."""
        if self.is_dollar(symbol):
            return DOLLAR_TOKEN
        if not 0 <= symbol < self.blocks:
            raise ValueError(f"symbol {symbol} outside alphabet of size {self.size}")
        return format(symbol, f"0{self.block_bits}b")

    def parse_symbol(self, token: str) -> int:
        """Parse ``$`` or an L-bit block back into a symbol."""
        if token == DOLLAR_TOKEN:
            if not self.has_dollar:
                raise ValueError("alphabet has no marker symbol")
            return self.blocks
        if len(token) != self.block_bits or set(token) - {"0", "1"}:
            raise ValueError(f"expected a {self.block_bits}-bit block or '$', got {token!r}")
        return int(token, 2)
