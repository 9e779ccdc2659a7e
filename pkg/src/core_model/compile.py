"""Lazy integer compilation of a gambler spec.

States are numbered in discovery order and transitions are cached in per-state
rows indexed by an observation code, so a simulation pays for each (state,
observation) pair once. The same tables back reachable-state enumeration.
"""

import logging
from fractions import Fraction
from itertools import product
from typing import NamedTuple, Optional

from src.core_model.bets import BetDistribution
from src.core_model.spec import GamblerSpec, Mask, Observation, State
from src.shared.errors import (
    MaskWidthMismatchError,
    NonStochasticBetsError,
    TotalityUnknownError,
)

logger = logging.getLogger("core_model")


class Outcome(NamedTuple):
    """Realized-bet class: probability placed on the realized symbol plus counter flags."""

    probability: Fraction
    full_win: bool
    parity_bet: bool
    parity_loss: bool


class CompiledGambler:
    """Integer tables for one spec, grown on demand."""

    def __init__(self, spec: GamblerSpec, *, state_cap: int = 200_000):
        self.spec = spec
        self.state_cap = state_cap
        self.size = spec.alphabet.size
        self.trailing = spec.heads - 1
        self.codes = self.size**spec.heads
        # weight of trailing head i in the observation code; the leading head comes last
        self.weights = tuple(self.size**i for i in range(self.trailing))
        self.lead_weight = self.size**self.trailing
        self.tokens: list[State] = []
        self.ids: dict[State, int] = {}
        self.transitions: list[list[Optional[tuple[int, int]]]] = []
        self.outcome_rows: list[list[int]] = []
        self.bet_rows: list[BetDistribution] = []
        self.concentrated: list[int] = []
        self.outcomes: list[Outcome] = []
        self._outcome_ids: dict[Outcome, int] = {}
        self.masks: list[tuple[int, ...]] = []
        self._mask_ids: dict[Mask, int] = {}
        self.initial_id = self.intern(spec.initial_state)

    def intern(self, token: State) -> int:
        """Return the id of ``token``, numbering it (and compiling its bets) when new."""
        sid = self.ids.get(token)
        if sid is not None:
            return sid
        if len(self.tokens) >= self.state_cap:
            raise TotalityUnknownError(
                f"reachable-state enumeration of {self.spec.name} exceeded the cap of {self.state_cap} states"
            )
        bet = self.spec.bets(token)
        if not isinstance(bet, BetDistribution):
            bet = BetDistribution(tuple(bet))
        if len(bet) != self.size:
            raise NonStochasticBetsError(
                f"bet row of state {token!r} has {len(bet)} entries, alphabet has {self.size}"
            )
        sid = len(self.tokens)
        self.ids[token] = sid
        self.tokens.append(token)
        self.transitions.append([None] * self.codes)
        self.bet_rows.append(bet)
        conc = bet.concentrated_symbol(self.spec.hedge)
        self.concentrated.append(-1 if conc is None else conc)
        self.outcome_rows.append([self._outcome_id(bet, conc, b) for b in range(self.size)])
        return sid

    def _outcome_id(self, bet: BetDistribution, conc: Optional[int], realized: int) -> int:
        dollar = self.spec.alphabet.dollar
        full = conc is not None and realized == conc
        parity = conc is not None and conc != dollar and realized != dollar
        outcome = Outcome(bet[realized], full, parity, parity and realized != conc)
        oid = self._outcome_ids.get(outcome)
        if oid is None:
            oid = len(self.outcomes)
            self._outcome_ids[outcome] = oid
            self.outcomes.append(outcome)
        return oid

    def _mask_id(self, mask: Mask) -> int:
        mask = tuple(bool(m) for m in mask)
        if len(mask) != self.trailing:
            raise MaskWidthMismatchError(
                f"{self.spec.name}: mask {mask} has width {len(mask)}, expected {self.trailing}"
            )
        mid = self._mask_ids.get(mask)
        if mid is None:
            mid = len(self.masks)
            self._mask_ids[mask] = mid
            self.masks.append(tuple(i for i, m in enumerate(mask) if m))
        return mid

    def decode(self, code: int) -> Observation:
        """Invert an observation code into (trailing..., leading)."""
        symbols = []
        for _ in range(self.spec.heads):
            code, symbol = divmod(code, self.size)
            symbols.append(symbol)
        return tuple(symbols)

    def encode(self, observation: Observation) -> int:
        """Map an observation tuple to its code."""
        code = 0
        for i, symbol in enumerate(observation):
            code += symbol * self.size**i
        return code

    def expand(self, sid: int, code: int) -> tuple[int, int]:
        """Compute and cache the transition of state ``sid`` on observation ``code``."""
        token = self.tokens[sid]
        next_token, mask = self.spec.transition(token, self.decode(code))
        entry = (self.intern(next_token), self._mask_id(mask))
        self.transitions[sid][code] = entry
        return entry

    def close(self) -> int:
        """Enumerate every state reachable on any observation; return the transition count."""
        checked = 0
        frontier = 0
        while frontier < len(self.tokens):
            row = self.transitions[frontier]
            for code in range(self.codes):
                if row[code] is None:
                    self.expand(frontier, code)
                checked += 1
            frontier += 1
        logger.debug(f"{self.spec.name}: closed over {len(self.tokens)} states")
        return checked


def compile_spec(spec: GamblerSpec, *, state_cap: int = 200_000) -> CompiledGambler:
    """Return lazily grown integer tables for ``spec``."""
    return CompiledGambler(spec, state_cap=state_cap)


def all_observations(heads: int, size: int) -> list[Observation]:
    """Every observation tuple, in code order."""
    return [tuple(reversed(t)) for t in product(range(size), repeat=heads)]
