"""Erase-and-reconstruct scenarios for generated sequences.

Each scenario reveals some indices of X (the family sequence) and R (the
base sequence), runs the deduction to its fixed point and compares every
target index symbol by symbol against the generated truth.

- ``window``: X on W and [m, n] gives X[0..n], with W = [0, m] minus V_j.
- ``split``: R[0..m] and R[B n [m, n]] give X[0..m]; X[m..n] gives
  R[C n [m, n]]; and R on [0, m], B and C gives R[0..n], where B are the
  multiples of h+1 and C the rest.
- ``restore``: X[0..n] and R on the overwritten set give R.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional

import numpy as np

from src.config.model import ReconstructionReport
from src.recon_oracle.deduce import Deduction, DependencyModel, build_model, propagate
from src.recon_oracle.parents import FamilyName
from src.sequence_forge.boundaries import intervals_below
from src.sequence_forge.sequence import SymbolSequence
from src.sequence_forge.source import BitSource
from src.structure_lab.index_set import IndexSet, union_all
from src.structure_lab.sets import overwritten_set_A, phi_ref_sets

logger = logging.getLogger("recon_oracle")

Scenario = Literal["window", "split", "restore"]
SCENARIOS: tuple[Scenario, ...] = ("window", "split", "restore")
DEFAULT_GAMMA = Fraction(9, 10)


@dataclass
class Stage:
    """One deduction run: what is revealed and what must come out."""

    name: str
    known_x: IndexSet = field(default_factory=IndexSet)
    known_r: IndexSet = field(default_factory=IndexSet)
    target_x: IndexSet = field(default_factory=IndexSet)
    target_r: IndexSet = field(default_factory=IndexSet)
    allow_inversion: bool = True


def window_start(n: int, gamma: Fraction = DEFAULT_GAMMA) -> int:
    """Return ceil(gamma n)."""
    return math.ceil(Fraction(gamma) * n)


def window_sets(h: int, m: int, n: int, multiplier: Optional[int] = None) -> tuple[IndexSet, IndexSet]:
    """Return (V, W) for the window [m, n].

    V collects j l/(h+1) over parity indices l of every interval meeting
    [m, n], with j = h - (k mod 2) unless a multiplier is given.
    """
    parts = []
    for k, s_k, t_k in intervals_below(h, n + 1):
        if t_k <= m or k == 0:
            continue
        j = multiplier if multiplier is not None else h - (k % 2)
        parts.append(phi_ref_sets(h, m, n, k)[j][0])
    v = union_all(parts)
    return v, IndexSet.span(0, m) - v


def scenario_stages(
    scenario: Scenario, family: FamilyName, h: int, m: int, n: int, model: DependencyModel
) -> list[Stage]:
    """Translate a scenario into deduction stages."""
    everything_r = IndexSet.span(0, model.r_size - 1)
    if scenario == "restore":
        if family == "phi":
            known_r = overwritten_set_A(h, n)
        else:
            known_r = IndexSet()
        return [
            Stage(
                name="restore",
                known_x=IndexSet.span(0, n),
                known_r=known_r,
                target_r=IndexSet.from_points(model.link_r.tolist()) | known_r,
            )
        ]
    if family != "phi":
        raise ValueError(f"scenario {scenario} is defined for the phi family only")
    if scenario == "window":
        _, w = window_sets(h, m, n)
        return [
            Stage(
                name="window",
                known_x=w | IndexSet.span(m, n),
                target_x=IndexSet.span(0, n),
            )
        ]
    if scenario == "split":
        b = IndexSet.from_points(range(m + (-m) % (h + 1), n + 1, h + 1))
        c = IndexSet.span(m, n) - b
        return [
            Stage(
                name="split:(w,y)->x",
                known_r=IndexSet.span(0, m) | b,
                target_x=IndexSet.span(0, m),
                allow_inversion=False,
            ),
            Stage(name="split:u_h->z", known_x=IndexSet.span(m, n), target_r=c),
            Stage(
                name="split:(z,w,y)->R",
                known_r=IndexSet.span(0, m) | b | c,
                target_r=everything_r,
            ),
        ]
    raise ValueError(f"unknown scenario {scenario!r}")


def _truth(family: FamilyName, h: int, seed: int, model: DependencyModel, block_bits: int) -> tuple[np.ndarray, np.ndarray]:
    source = BitSource.seeded(seed)
    if family == "phi":
        sequence = SymbolSequence.phi(source, h, block_bits)
        base = source.symbols(0, model.r_size, block_bits)
    else:
        sequence = SymbolSequence.f(source, h)
        base = source.symbols(0, model.r_size, 1)
    x = sequence.prefix(model.horizon + 1).astype(np.int64)
    return x, base.astype(np.int64)


def first_unmentioned(model: DependencyModel, known: IndexSet) -> Optional[int]:
    """Smallest known X index >= 1 that no equation or structural rule involves."""
    mentioned = model.mentioned() | set(model.structural)
    for index in known:
        if index >= 1 and index not in mentioned:
            return index
    return None


def first_unlinked_r(model: DependencyModel, known: IndexSet) -> Optional[int]:
    """Smallest known R index >= 1 whose X partner no equation or structural rule involves."""
    mentioned = model.mentioned() | set(model.structural)
    for x_index, r_index in zip(model.link_x.tolist(), model.link_r.tolist()):
        if r_index >= 1 and r_index in known and x_index not in mentioned:
            return r_index
    return None


def reconstruction_roundtrip(
    scenario: Scenario,
    *,
    family: FamilyName = "phi",
    h: int,
    n: int,
    m: Optional[int] = None,
    seed: int = 0,
    gamma: Fraction = DEFAULT_GAMMA,
    block_bits: int = 1,
    erase: Optional[list[int]] = None,
    erase_r: Optional[list[int]] = None,
    mutate: bool = False,
) -> ReconstructionReport:
    """Generate, erase, reconstruct and compare.

    ``erase`` and ``erase_r`` remove extra X and R indices from every stage's
    revealed sets. ``mutate`` erases one revealed index that no stage can
    recover: an X index when the first stage reveals X, else an R index.

    Raises:
        ValueError: When ``mutate`` finds no unrecoverable index to erase.
    """
    if m is None:
        m = window_start(n, gamma)
    if not 0 <= m <= n:
        raise ValueError(f"expected 0 <= m <= n, got m={m}, n={n}")
    model = build_model(family, h, n, block_bits)
    x_true, r_true = _truth(family, h, seed, model, block_bits)
    stages = scenario_stages(scenario, family, h, m, n, model)
    erased: list[int] = list(erase or [])
    erased_r: list[int] = list(erase_r or [])
    if mutate:
        first = stages[0]
        if first.known_x:
            victim = first_unmentioned(model, first.known_x)
        else:
            victim = first_unlinked_r(model, first.known_r)
        if victim is None:
            raise ValueError(f"no unrecoverable index to erase in the {scenario} scenario")
        (erased if first.known_x else erased_r).append(victim)
    removed = IndexSet.from_points(erased)
    removed_r = IndexSet.from_points(erased_r)

    missing: list[int] = []
    mismatched: list[int] = []
    for stage in stages:
        state = Deduction.empty(model)
        state.reveal_x(stage.known_x - removed, x_true)
        state.reveal_r((stage.known_r - removed_r).clip(0, model.r_size - 1), r_true)
        propagate(model, state, allow_inversion=stage.allow_inversion)
        for index in stage.target_x.clip(0, n):
            if not state.known_x[index]:
                missing.append(index)
            elif state.x[index] != x_true[index]:
                mismatched.append(index)
        for index in stage.target_r.clip(0, model.r_size - 1):
            if not state.known_r[index]:
                missing.append(index)
            elif state.r[index] != r_true[index]:
                mismatched.append(index)
        logger.debug(f"{stage.name}: {len(missing)} missing, {len(mismatched)} mismatched so far")

    report = ReconstructionReport(
        scenario=scenario,
        family=family,
        h=h,
        n=n,
        m=m,
        seed=seed,
        passed=not missing and not mismatched,
        missing=missing,
        mismatched=mismatched,
        erased=erased,
        erased_r=erased_r,
    )
    logger.info(f"{scenario} {family} h={h} n={n} m={m} seed={seed}: {'pass' if report.passed else 'fail'}")
    return report

