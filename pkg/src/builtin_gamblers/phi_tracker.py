"""The five-mode adaptive gambler on Phi_h sequences.

State tokens are ``(mode, phase, counter, pending)``:

- ``mode`` in -1..3, switched whenever the leading head reads the marker;
- ``phase`` = n mod (h+1), global;
- ``counter`` = steps since the mode was entered, mod the mode's period;
- ``pending`` = the symbol the next bet concentrates on, or -1 for none.

Heads 1..h-2 move while phase < i, so they sit on i n/(h+1) at every
multiple n of h+1. Head h-1 follows the mode schedule. In a betting mode the
step at phase h folds the trailing observations into ``pending``: the marker
when any of them is the marker, their XOR otherwise. The bet is
chi_pending when something is pending and nu elsewhere.
"""

import logging
from functools import reduce
from operator import xor
from typing import Optional

from src.builtin_gamblers.params import PhiTrackerParams
from src.builtin_gamblers.schedules import (
    BETTING_MODES,
    ModeSchedule,
    derived_schedule,
    literal_schedule,
    tracking_oracle,
)
from src.config.model import ScheduleProvenance
from src.core_model.bets import BetDistribution
from src.core_model.spec import GamblerSpec, Mask, Observation, State
from src.shared.errors import ScheduleInfeasibleError
from src.shared.rationals import format_rational

logger = logging.getLogger("builtin_gamblers")

INITIAL_STATE = (-1, 0, 0, -1)


def tracker_mode(token: State) -> int:
    """Mode of a Phi-tracker state token."""
    return token[0]  # type: ignore[index]


def _select_schedule(
    h: int, schedule: Optional[ModeSchedule], enforce: bool, k_max: int
) -> tuple[ModeSchedule, ScheduleProvenance]:
    literal = literal_schedule(h)
    derived = derived_schedule(h)
    literal_failures = len(tracking_oracle(literal, h, k_max))
    if schedule is not None:
        failures = tracking_oracle(schedule, h, k_max)
        if failures and enforce:
            first = failures[0]
            raise ScheduleInfeasibleError(
                f"schedule {schedule.as_list()} misses parity index {first.index} "
                f"(head at {first.actual}, needs {first.required})"
            )
        if failures:
            logger.warning(f"custom schedule fails the tracking oracle at {len(failures)} parity indices")
        used, emitted = "custom", schedule
    elif literal_failures == 0:
        used, emitted = "literal", literal
    else:
        failures = tracking_oracle(derived, h, k_max, limit=1)
        if failures:
            raise ScheduleInfeasibleError(f"neither the literal nor the derived schedule tracks h={h}")
        used, emitted = "derived", derived
        logger.info(
            f"literal schedule misses {literal_failures} parity indices for h={h}; emitting the derived schedule"
        )
    provenance = ScheduleProvenance(
        used=used,
        literal=literal.as_list(),
        derived=derived.as_list(),
        emitted=emitted.as_list(),
        literal_failures=literal_failures,
    )
    return emitted, provenance


def build_phi_tracker(
    params: PhiTrackerParams,
    *,
    schedule: Optional[ModeSchedule] = None,
    enforce: bool = False,
    oracle_depth: int = 4,
) -> GamblerSpec:
    """Build the adaptive Phi_h gambler.

    Without an explicit schedule the literal constants are tried first and
    the derived ones are emitted when the tracking oracle refutes them.

    Raises:
        ScheduleInfeasibleError: When no candidate schedule tracks, or an
            explicit schedule fails the oracle with ``enforce`` set.
    """
    h = params.h
    alphabet = params.alphabet
    dollar = alphabet.blocks
    emitted, provenance = _select_schedule(h, schedule, enforce, oracle_depth)
    legs = {mode: emitted.leg(mode) for mode in (-1, 0, 1, 2, 3)}
    fixed = [tuple(phase < i for i in range(1, h - 1)) for phase in range(h + 1)]
    nu = params.nu()
    chis = [params.chi(symbol) for symbol in range(alphabet.size)]

    def transition(state: State, observation: Observation) -> tuple[State, Mask]:
        mode, phase, counter, _ = state  # type: ignore[misc]
        if observation[-1] == dollar:
            mode = 0 if mode == -1 else (mode + 1) % 4
            counter = 0
        moves, period = legs[mode]
        mask = fixed[phase] + (counter < moves,)
        pending = -1
        if mode in BETTING_MODES and phase == h:
            trailing = observation[:-1]
            pending = dollar if dollar in trailing else reduce(xor, trailing, 0)
        return (mode, (phase + 1) % (h + 1), (counter + 1) % period, pending), mask

    def bets(state: State) -> BetDistribution:
        pending = state[3]  # type: ignore[index]
        return nu if pending < 0 else chis[pending]

    return GamblerSpec(
        heads=h,
        alphabet=alphabet,
        transition=transition,
        bets=bets,
        initial_state=INITIAL_STATE,
        hedge=params.hedge,
        name=f"phi-tracker-h{h}-L{params.block_bits}",
        metadata={
            "family": "phi",
            "h": str(h),
            "L": str(params.block_bits),
            "hedge": format_rational(params.hedge),
            "schedule": provenance.model_dump_json(),
        },
    )


def schedule_provenance(spec: GamblerSpec) -> ScheduleProvenance:
    """Read the schedule provenance back from a built tracker."""
    return ScheduleProvenance.model_validate_json(spec.metadata["schedule"])
