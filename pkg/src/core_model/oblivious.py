"""Timer analysis of oblivious gamblers: speeds and input-independent trajectories."""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from src.core_model.spec import Mask, ObliviousGamblerSpec, State
from src.shared.errors import TotalityUnknownError


@dataclass(frozen=True)
class TimerOrbit:
    """The timer's path from its initial state: a transient followed by a cycle."""

    states: tuple[State, ...]
    masks: tuple[Mask, ...]
    transient: int
    """Number of states before the cycle starts."""

    @property
    def cycle_length(self) -> int:
        return len(self.states) - self.transient

    def cycle_masks(self) -> tuple[Mask, ...]:
        return self.masks[self.transient :]


def timer_orbit(ospec: ObliviousGamblerSpec, *, state_cap: int = 200_000) -> TimerOrbit:
    """Follow delta_T from t0 until a state repeats."""
    seen: dict[State, int] = {}
    states: list[State] = []
    timer = ospec.initial_timer
    while timer not in seen:
        if len(states) >= state_cap:
            raise TotalityUnknownError(f"timer of {ospec.name} did not cycle within {state_cap} states")
        seen[timer] = len(states)
        states.append(timer)
        timer = ospec.timer_transition(timer)
    masks = tuple(tuple(bool(m) for m in ospec.timer_mask(t)) for t in states)
    return TimerOrbit(states=tuple(states), masks=masks, transient=seen[timer])


def oblivious_speeds(ospec: ObliviousGamblerSpec) -> list[Fraction]:
    """Return eta_i: the share of timer-cycle steps on which trailing head i moves."""
    orbit = timer_orbit(ospec)
    cycle = orbit.cycle_masks()
    return [
        Fraction(sum(1 for mask in cycle if mask[i]), len(cycle))
        for i in range(ospec.heads - 1)
    ]


def oblivious_trajectory(ospec: ObliviousGamblerSpec, n: int) -> np.ndarray:
    """Return pi_i(0..n) for every trailing head, shape (n + 1, h - 1).

    Row ``j`` holds the positions before the move of step ``j``.
    """
    orbit = timer_orbit(ospec)
    table = np.asarray(orbit.masks, dtype=np.int64).reshape(len(orbit.masks), ospec.heads - 1)
    steps = np.arange(n, dtype=np.int64)
    cycle = orbit.cycle_length
    index = np.where(
        steps < orbit.transient,
        steps,
        orbit.transient + (steps - orbit.transient) % cycle,
    )
    moves = table[index]
    positions = np.zeros((n + 1, ospec.heads - 1), dtype=np.int64)
    np.cumsum(moves, axis=0, out=positions[1:])
    return positions
