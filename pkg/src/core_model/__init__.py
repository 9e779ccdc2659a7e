"""Alphabets, gambler specifications, validation and the oblivious embedding."""

from src.core_model.alphabet import AlphabetDescriptor
from src.core_model.bets import BetDistribution
from src.core_model.compile import CompiledGambler, compile_spec
from src.core_model.oblivious import oblivious_speeds, oblivious_trajectory, timer_orbit
from src.core_model.spec import (
    GamblerSpec,
    ObliviousGamblerSpec,
    TableMachine,
    TransitionRow,
    embed_oblivious,
    table_spec,
)
from src.core_model.spec_file import format_spec_file, parse_spec_file
from src.core_model.validation import validate_spec

__all__ = [
    "AlphabetDescriptor",
    "BetDistribution",
    "CompiledGambler",
    "GamblerSpec",
    "ObliviousGamblerSpec",
    "TableMachine",
    "TransitionRow",
    "compile_spec",
    "embed_oblivious",
    "format_spec_file",
    "oblivious_speeds",
    "oblivious_trajectory",
    "parse_spec_file",
    "table_spec",
    "timer_orbit",
    "validate_spec",
]
