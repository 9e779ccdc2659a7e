"""Fixed-point deduction over the family layer X and the base layer R.

X[i] and R[r(i)] determine each other wherever the family copies the base
symbol; marker positions of Phi_h and index 0 of F_{h+1} are structural; and
every parity identity X[c] = XOR X[parents(c)] with exactly one unknown
member determines that member. Deducing a parent from its child is XOR
inversion and can be switched off.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.recon_oracle.parents import FamilyName, parents
from src.sequence_forge.boundaries import intervals_below
from src.sequence_forge.primes import prime
from src.structure_lab.index_set import IndexSet

logger = logging.getLogger("recon_oracle")


@dataclass(frozen=True)
class DependencyModel:
    """Links, structural symbols and parity equations of X[0..horizon]."""

    family: FamilyName
    h: int
    horizon: int
    link_x: np.ndarray
    link_r: np.ndarray
    structural: dict[int, int]
    equations: tuple[tuple[int, tuple[int, ...]], ...]
    r_size: int

    def mentioned(self) -> set[int]:
        """X indices that appear in some parity equation."""
        out: set[int] = set()
        for child, refs in self.equations:
            out.add(child)
            out.update(refs)
        return out


def _phi_markers(h: int, horizon: int) -> list[int]:
    markers = []
    for _, s_k, t_k in intervals_below(h, horizon + 1):
        markers.extend(m for m in (s_k, t_k) if m <= horizon)
    return markers


def build_model(family: FamilyName, h: int, horizon: int, block_bits: int = 1) -> DependencyModel:
    """Build the deduction model for X[0..horizon]."""
    xs = np.arange(horizon + 1, dtype=np.int64)
    children = [i for i in range(1, horizon + 1) if parents(family, h, i)]
    equations = tuple((c, parents(family, h, c)) for c in children)
    if family == "phi":
        markers = _phi_markers(h, horizon)
        overwritten = np.zeros(horizon + 1, dtype=bool)
        overwritten[markers] = True
        overwritten[children] = True
        link_x = xs[~overwritten]
        link_r = link_x.copy()
        structural = {m: 1 << block_bits for m in markers}
        r_size = horizon + 1
    else:
        p = prime(h + 1)
        plain = xs % p != 0
        link_x = xs[plain]
        link_r = (link_x // p) * (p - 1) + link_x % p
        structural = {0: 0}
        r_size = int(link_r.max()) + 1 if link_r.size else 1
    return DependencyModel(
        family=family,
        h=h,
        horizon=horizon,
        link_x=link_x,
        link_r=link_r,
        structural=structural,
        equations=equations,
        r_size=r_size,
    )


@dataclass
class Deduction:
    """Known masks and values of both layers; grown in place by :func:`propagate`."""

    known_x: np.ndarray
    x: np.ndarray
    known_r: np.ndarray
    r: np.ndarray

    @classmethod
    def empty(cls, model: DependencyModel) -> "Deduction":
        size = model.horizon + 1
        return cls(
            known_x=np.zeros(size, dtype=bool),
            x=np.zeros(size, dtype=np.int64),
            known_r=np.zeros(model.r_size, dtype=bool),
            r=np.zeros(model.r_size, dtype=np.int64),
        )

    def reveal_x(self, indices: IndexSet, truth: Optional[np.ndarray] = None) -> None:
        for lo, hi in indices.intervals:
            hi = min(hi, self.known_x.size - 1)
            self.known_x[lo : hi + 1] = True
            if truth is not None:
                self.x[lo : hi + 1] = truth[lo : hi + 1]

    def reveal_r(self, indices: IndexSet, truth: Optional[np.ndarray] = None) -> None:
        for lo, hi in indices.intervals:
            hi = min(hi, self.known_r.size - 1)
            self.known_r[lo : hi + 1] = True
            if truth is not None:
                self.r[lo : hi + 1] = truth[lo : hi + 1]


def propagate(model: DependencyModel, state: Deduction, *, allow_inversion: bool = True) -> int:
    """Run the deduction rules to a fixed point; return the number of passes."""
    for index, value in model.structural.items():
        state.known_x[index] = True
        state.x[index] = value
    passes = 0
    changed = True
    while changed:
        changed = False
        passes += 1
        forward = state.known_r[model.link_r] & ~state.known_x[model.link_x]
        if forward.any():
            state.x[model.link_x[forward]] = state.r[model.link_r[forward]]
            state.known_x[model.link_x[forward]] = True
            changed = True
        backward = state.known_x[model.link_x] & ~state.known_r[model.link_r]
        if backward.any():
            state.r[model.link_r[backward]] = state.x[model.link_x[backward]]
            state.known_r[model.link_r[backward]] = True
            changed = True
        for child, refs in model.equations:
            members = (child, *refs)
            unknown = [i for i in members if not state.known_x[i]]
            if len(unknown) != 1:
                continue
            target = unknown[0]
            if target != child and not allow_inversion:
                continue
            value = 0
            for i in members:
                if i != target:
                    value ^= int(state.x[i])
            state.x[target] = value
            state.known_x[target] = True
            changed = True
    logger.debug(f"{model.family} deduction up to {model.horizon} settled after {passes} passes")
    return passes


def _as_set(mask: np.ndarray) -> IndexSet:
    idx = np.flatnonzero(mask)
    if not idx.size:
        return IndexSet()
    breaks = np.flatnonzero(np.diff(idx) != 1)
    starts = np.concatenate([[idx[0]], idx[breaks + 1]])
    ends = np.concatenate([idx[breaks], [idx[-1]]])
    return IndexSet(zip(starts.tolist(), ends.tolist()))


def deducible_closure(
    family: FamilyName,
    h: int,
    known_x: IndexSet,
    horizon: int,
    *,
    known_r: IndexSet = IndexSet(),
    allow_inversion: bool = True,
    block_bits: int = 1,
) -> tuple[IndexSet, IndexSet]:
    """Return the X and R indices deducible from the known ones."""
    model = build_model(family, h, horizon, block_bits)
    state = Deduction.empty(model)
    state.reveal_x(known_x.clip(0, horizon))
    state.reveal_r(known_r.clip(0, model.r_size - 1))
    propagate(model, state, allow_inversion=allow_inversion)
    return _as_set(state.known_x), _as_set(state.known_r)
