"""Random table machines for property tests and sampled verification."""

from fractions import Fraction
from typing import Optional

import numpy as np

from src.core_model.alphabet import AlphabetDescriptor
from src.core_model.bets import BetDistribution
from src.core_model.compile import all_observations
from src.core_model.spec import (
    GamblerSpec,
    ObliviousGamblerSpec,
    TableMachine,
    TransitionRow,
    table_spec,
)


def _random_bet(rng: np.random.Generator, size: int, zero_share: float = 0.0) -> BetDistribution:
    weights = rng.integers(1, 17, size=size)
    if zero_share:
        weights[rng.random(size) < zero_share] = 0
        if weights.sum() == 0:
            weights[rng.integers(size)] = 1
    return BetDistribution.from_weights([int(w) for w in weights])


def random_gambler_spec(
    rng: np.random.Generator,
    *,
    heads: int,
    alphabet: AlphabetDescriptor,
    states: int,
    zero_share: float = 0.0,
    hedge: Optional[Fraction] = None,
) -> GamblerSpec:
    """Build a random adaptive gambler with one explicit row per observation tuple."""
    names = tuple(f"q{i}" for i in range(states))
    observations = all_observations(heads, alphabet.size)
    rows: dict[str, tuple[TransitionRow, ...]] = {}
    bet_rows: dict[str, BetDistribution] = {}
    for name in names:
        rows[name] = tuple(
            TransitionRow(
                pattern=obs,
                next_state=names[int(rng.integers(states))],
                mask=tuple(bool(b) for b in rng.integers(0, 2, size=heads - 1)),
            )
            for obs in observations
        )
        bet_rows[name] = _random_bet(rng, alphabet.size, zero_share)
    machine = TableMachine(states=names, rows=rows, bet_rows=bet_rows)
    return table_spec(
        heads=heads,
        alphabet=alphabet,
        machine=machine,
        initial_state=names[0],
        hedge=hedge,
        name=f"random-{heads}h-{states}q",
    )


def random_oblivious_spec(
    rng: np.random.Generator,
    *,
    heads: int,
    alphabet: AlphabetDescriptor,
    data_states: int,
    timer_states: int,
) -> ObliviousGamblerSpec:
    """Build a random oblivious gambler; the timer map is an arbitrary function of T."""
    observations = all_observations(heads, alphabet.size)
    data_table = {
        (p, obs): int(rng.integers(data_states)) for p in range(data_states) for obs in observations
    }
    timer_next = [int(rng.integers(timer_states)) for _ in range(timer_states)]
    timer_masks = [
        tuple(bool(b) for b in rng.integers(0, 2, size=heads - 1)) for _ in range(timer_states)
    ]
    bets = {
        (p, t): _random_bet(rng, alphabet.size) for p in range(data_states) for t in range(timer_states)
    }
    return ObliviousGamblerSpec(
        heads=heads,
        alphabet=alphabet,
        data_transition=lambda p, obs: data_table[(p, tuple(obs))],
        timer_transition=lambda t: timer_next[t],
        timer_mask=lambda t: timer_masks[t],
        bets=lambda p, t: bets[(p, t)],
        initial_data=0,
        initial_timer=0,
        name=f"random-oblivious-{heads}h-{data_states}x{timer_states}",
    )
