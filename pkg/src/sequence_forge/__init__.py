"""Base random sources and the self-referential Phi_h and F_{h+1} families."""

from src.sequence_forge.boundaries import (
    boundary_points,
    interval_of,
    phi_boundaries,
    phi_references,
)
from src.sequence_forge.files import load_sequence, read_header, write_sequence
from src.sequence_forge.primes import PrimeTable, prime, primes, valuation
from src.sequence_forge.sequence import (
    SymbolSequence,
    f_symbol,
    make_sequence,
    phi_symbol,
)
from src.sequence_forge.source import BitSource

__all__ = [
    "BitSource",
    "PrimeTable",
    "SymbolSequence",
    "boundary_points",
    "f_symbol",
    "interval_of",
    "load_sequence",
    "make_sequence",
    "phi_boundaries",
    "phi_references",
    "phi_symbol",
    "prime",
    "primes",
    "read_header",
    "valuation",
    "write_sequence",
]
