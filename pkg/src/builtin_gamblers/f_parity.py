"""Oblivious (h+1)-head parity gambler on F_{h+1} sequences.

With p = p_{h+1}, trailing head k moves on the first p_k of every p timer
steps, so it sits on q p_k at step q p - 1. The step at timer phase p - 1
stores the XOR of the trailing observations and the next bet, on the
parity index q p, concentrates on it.
"""

from fractions import Fraction
from functools import reduce
from operator import xor

from src.builtin_gamblers.params import DEFAULT_HEDGE
from src.core_model.alphabet import AlphabetDescriptor
from src.core_model.bets import BetDistribution
from src.core_model.spec import Mask, ObliviousGamblerSpec, Observation, State
from src.sequence_forge.primes import prime
from src.shared.rationals import format_rational


def build_f_parity(h: int, hedge: Fraction = DEFAULT_HEDGE) -> ObliviousGamblerSpec:
    """Build the oblivious parity gambler for F_{h+1}."""
    if h < 1:
        raise ValueError(f"the F family needs h >= 1, got {h}")
    hedge = Fraction(hedge)
    if not 0 < hedge < 1:
        raise ValueError(f"hedge must lie in (0, 1), got {hedge}")
    alphabet = AlphabetDescriptor(block_bits=1)
    p = prime(h + 1)
    speeds = [prime(k) for k in range(1, h + 1)]
    uniform = BetDistribution.uniform(alphabet)
    chis = [BetDistribution.chi(alphabet, symbol, hedge) for symbol in range(2)]

    def data_transition(data: State, observation: Observation) -> State:
        phase, _ = data  # type: ignore[misc]
        pending = reduce(xor, observation[:-1], 0) if phase == p - 1 else -1
        return (phase + 1) % p, pending

    def timer_transition(timer: State) -> State:
        return (timer + 1) % p  # type: ignore[operator]

    def timer_mask(timer: State) -> Mask:
        return tuple(timer < speed for speed in speeds)  # type: ignore[operator]

    def bets(data: State, timer: State) -> BetDistribution:
        pending = data[1]  # type: ignore[index]
        return uniform if pending < 0 else chis[pending]

    return ObliviousGamblerSpec(
        heads=h + 1,
        alphabet=alphabet,
        data_transition=data_transition,
        timer_transition=timer_transition,
        timer_mask=timer_mask,
        bets=bets,
        initial_data=(0, -1),
        initial_timer=0,
        hedge=hedge,
        name=f"f-parity-h{h}",
        metadata={"family": "f", "h": str(h), "hedge": format_rational(hedge)},
    )
