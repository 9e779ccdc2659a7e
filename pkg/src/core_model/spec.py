"""Gambler specifications.

A gambler is exposed through one stepping interface whatever its origin: a
``transition`` callable mapping (state, observation tuple) to (next state,
move mask) and a ``bets`` callable mapping a state to its bet distribution.
Explicit tables (spec files, random machines) and procedural machines
(builtins) both plug in here. States are opaque hashable tokens.

Observation tuples list the trailing heads 1..h-1 first and the leading head
last. A move mask has one boolean per trailing head; the leading head always
moves.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Mapping, Optional

from src.core_model.alphabet import AlphabetDescriptor
from src.core_model.bets import BetDistribution
from src.shared.errors import TransitionUndefinedError

State = Hashable
Mask = tuple[bool, ...]
Observation = tuple[int, ...]
TransitionFn = Callable[[State, Observation], tuple[State, Mask]]
BetFn = Callable[[State], BetDistribution]

WILDCARD = None


@dataclass(frozen=True)
class GamblerSpec:
    """Adaptive h-head finite-state gambler (Q, Sigma, delta, beta, q0, c0)."""

    heads: int
    alphabet: AlphabetDescriptor
    transition: TransitionFn
    bets: BetFn
    initial_state: State
    initial_capital: Fraction = Fraction(1)
    hedge: Optional[Fraction] = None
    """Hedge used to recognize concentrated (chi) bets; None disables full-win counting."""
    name: str = "gambler"
    metadata: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.heads < 1:
            raise ValueError(f"a gambler needs at least one head, got {self.heads}")
        if self.initial_capital < 0:
            raise ValueError(f"initial capital must be nonnegative, got {self.initial_capital}")
        object.__setattr__(self, "initial_capital", Fraction(self.initial_capital))


@dataclass(frozen=True)
class ObliviousGamblerSpec:
    """Gambler whose head movement is driven by a data-independent timer.

    The state space is P x T. The data part reads the observations, the timer
    part advances on its own and alone decides the move mask.
    """

    heads: int
    alphabet: AlphabetDescriptor
    data_transition: Callable[[State, Observation], State]
    timer_transition: Callable[[State], State]
    timer_mask: Callable[[State], Mask]
    bets: Callable[[State, State], BetDistribution]
    initial_data: State
    initial_timer: State
    initial_capital: Fraction = Fraction(1)
    hedge: Optional[Fraction] = None
    name: str = "oblivious-gambler"
    metadata: Mapping[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class TransitionRow:
    """One row of an explicit transition table.

    ``pattern`` holds one entry per head: a symbol, or None as a wildcard.
    """

    pattern: tuple[Optional[int], ...]
    next_state: str
    mask: Mask

    def matches(self, observation: Observation) -> bool:
        """Return True when every non-wildcard entry equals the observation."""
        return all(p is None or p == o for p, o in zip(self.pattern, observation))


@dataclass(frozen=True)
class TableMachine:
    """Explicit transition and bet tables; the first matching row wins."""

    states: tuple[str, ...]
    rows: Mapping[str, tuple[TransitionRow, ...]]
    bet_rows: Mapping[str, BetDistribution]

    def transition(self, state: State, observation: Observation) -> tuple[State, Mask]:
        """Return the (next state, mask) of the first row matching the observation."""
        for row in self.rows.get(str(state), ()):
            if row.matches(observation):
                return row.next_state, row.mask
        raise TransitionUndefinedError(
            f"no transition row for state {state!r} on observation {observation}"
        )

    def bet(self, state: State) -> BetDistribution:
        """Return the bet row of ``state``."""
        try:
            return self.bet_rows[str(state)]
        except KeyError:
            raise TransitionUndefinedError(f"no bet row for state {state!r}") from None


def table_spec(
    *,
    heads: int,
    alphabet: AlphabetDescriptor,
    machine: TableMachine,
    initial_state: str,
    initial_capital: Fraction = Fraction(1),
    hedge: Optional[Fraction] = None,
    name: str = "table-gambler",
    metadata: Optional[Mapping[str, str]] = None,
) -> GamblerSpec:
    """Wrap explicit tables into a GamblerSpec."""
    if initial_state not in machine.states:
        raise ValueError(f"initial state {initial_state!r} is not a declared state")
    return GamblerSpec(
        heads=heads,
        alphabet=alphabet,
        transition=machine.transition,
        bets=machine.bet,
        initial_state=initial_state,
        initial_capital=initial_capital,
        hedge=hedge,
        name=name,
        metadata=dict(metadata or {}),
    )


def embed_oblivious(ospec: ObliviousGamblerSpec) -> GamblerSpec:
    """Embed an oblivious gambler as an adaptive one over states (p, t).

    ``delta((p, t), b) = ((delta_P(p, b), delta_T(t)), mu(t))`` and
    ``beta((p, t)) = beta_P x T(p, t)``.
    """

    def transition(state: State, observation: Observation) -> tuple[State, Mask]:
        data, timer = state  # type: ignore[misc]
        return (
            (ospec.data_transition(data, observation), ospec.timer_transition(timer)),
            ospec.timer_mask(timer),
        )

    def bets(state: State) -> BetDistribution:
        data, timer = state  # type: ignore[misc]
        return ospec.bets(data, timer)

    return GamblerSpec(
        heads=ospec.heads,
        alphabet=ospec.alphabet,
        transition=transition,
        bets=bets,
        initial_state=(ospec.initial_data, ospec.initial_timer),
        initial_capital=ospec.initial_capital,
        hedge=ospec.hedge,
        name=ospec.name,
        metadata={**ospec.metadata, "oblivious": "embedded"},
    )
