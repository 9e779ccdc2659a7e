"""Oblivious Phi_h gambler with every trailing head at a fixed speed."""

from functools import reduce
from operator import xor

from src.builtin_gamblers.params import PhiTrackerParams
from src.core_model.bets import BetDistribution
from src.core_model.spec import Mask, ObliviousGamblerSpec, Observation, State
from src.shared.rationals import format_rational


def build_phi_baseline(params: PhiTrackerParams, speed_numerator: int) -> ObliviousGamblerSpec:
    """Build the tracker with head h-1 frozen at speed j/(h+1).

    The timer is the phase n mod (h+1) and alone drives the heads. The data
    part copies the phase and the mode, and concentrates its bet only in the
    betting mode whose intervals need ratio j/(h+1): odd intervals for
    j = h - 1, even ones for j = h.
    """
    h = params.h
    j = speed_numerator
    if j not in (h - 1, h):
        raise ValueError(f"speed numerator must be h-1 or h, got {j}")
    alphabet = params.alphabet
    dollar = alphabet.blocks
    betting_mode = 2 if j == h - 1 else 0
    nu = params.nu()
    chis = [params.chi(symbol) for symbol in range(alphabet.size)]

    def data_transition(data: State, observation: Observation) -> State:
        mode, phase, _ = data  # type: ignore[misc]
        if observation[-1] == dollar:
            mode = 0 if mode == -1 else (mode + 1) % 4
        pending = -1
        if mode == betting_mode and phase == h:
            trailing = observation[:-1]
            pending = dollar if dollar in trailing else reduce(xor, trailing, 0)
        return mode, (phase + 1) % (h + 1), pending

    def timer_transition(timer: State) -> State:
        return (timer + 1) % (h + 1)  # type: ignore[operator]

    def timer_mask(timer: State) -> Mask:
        return tuple(timer < i for i in range(1, h - 1)) + (timer < j,)  # type: ignore[operator]

    def bets(data: State, timer: State) -> BetDistribution:
        pending = data[2]  # type: ignore[index]
        return nu if pending < 0 else chis[pending]

    return ObliviousGamblerSpec(
        heads=h,
        alphabet=alphabet,
        data_transition=data_transition,
        timer_transition=timer_transition,
        timer_mask=timer_mask,
        bets=bets,
        initial_data=(-1, 0, -1),
        initial_timer=0,
        hedge=params.hedge,
        name=f"phi-baseline-h{h}-j{j}",
        metadata={
            "family": "phi",
            "h": str(h),
            "L": str(params.block_bits),
            "hedge": format_rational(params.hedge),
            "speed": f"{j}/{h + 1}",
        },
    )
