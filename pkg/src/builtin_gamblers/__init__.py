"""Explicit gamblers for the Phi_h and F_{h+1} families."""

from fractions import Fraction
from typing import Literal, Optional

from src.builtin_gamblers.baseline import build_phi_baseline
from src.builtin_gamblers.f_parity import build_f_parity
from src.builtin_gamblers.params import DEFAULT_HEDGE, PhiTrackerParams
from src.builtin_gamblers.phi_tracker import build_phi_tracker, schedule_provenance, tracker_mode
from src.builtin_gamblers.schedules import (
    ModeSchedule,
    derived_schedule,
    head_positions,
    literal_schedule,
    tracking_oracle,
)
from src.builtin_gamblers.tracking import verify_tracking
from src.core_model.spec import GamblerSpec, embed_oblivious

BuiltinFamily = Literal["phi", "f", "phi-baseline"]


def builtin_spec(
    family: BuiltinFamily,
    *,
    h: int,
    block_bits: int = 1,
    hedge: Fraction = DEFAULT_HEDGE,
    speed_numerator: Optional[int] = None,
) -> GamblerSpec:
    """Build a builtin gambler as an adaptive spec (oblivious ones embedded)."""
    if family == "phi":
        return build_phi_tracker(PhiTrackerParams(h=h, block_bits=block_bits, hedge=hedge))
    if family == "f":
        if block_bits != 1:
            raise ValueError(f"the F family is binary, got L={block_bits}")
        return embed_oblivious(build_f_parity(h, hedge))
    if family == "phi-baseline":
        params = PhiTrackerParams(h=h, block_bits=block_bits, hedge=hedge)
        return embed_oblivious(build_phi_baseline(params, speed_numerator or h - 1))
    raise ValueError(f"unknown builtin family {family!r}")


__all__ = [
    "BuiltinFamily",
    "DEFAULT_HEDGE",
    "ModeSchedule",
    "PhiTrackerParams",
    "build_f_parity",
    "build_phi_baseline",
    "build_phi_tracker",
    "builtin_spec",
    "derived_schedule",
    "head_positions",
    "literal_schedule",
    "schedule_provenance",
    "tracker_mode",
    "tracking_oracle",
    "verify_tracking",
]
