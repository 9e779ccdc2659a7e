"""Step semantics and capital accounting of multi-head gamblers.

Timing convention: at step n the gambler is in state q_n and bets beta(q_n)
on symbol X[n]; the transition of step n reads (X[pi_1(n)], ...,
X[pi_{h-1}(n)], X[n]) and yields q_{n+1} together with the trailing move
mask, so pi_i(n+1) = pi_i(n) + mask_i. This is the martingale indexing
d(wb) = |Sigma| d(w) beta(q_|w|)(b).

Capital is kept as a tally of realized outcome classes. The log2 capital is
recomputed from the tally with a compensated sum, so it never accumulates
per-step rounding; an exact rational capital is kept on request.
"""

import copy
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from src.core_model.compile import CompiledGambler, compile_spec
from src.core_model.spec import GamblerSpec, State
from src.gale_engine.checkpoints import normalize_checkpoints
from src.sequence_forge.sequence import SymbolSequence
from src.shared.errors import IndexOverflowError

logger = logging.getLogger("gale_engine")


@dataclass(frozen=True)
class Checkpoint:
    """Engine snapshot after ``n`` steps, i.e. after betting on X[0..n-1]."""

    n: int
    log2_capital: float
    log2_gales: tuple[float, ...]
    positions: tuple[int, ...]
    state_id: int
    full_wins: int
    parity_bets: int
    parity_losses: int


@dataclass(frozen=True)
class StepLog:
    """Per-step record of a run.

    ``positions[n]`` holds pi_i(n) before the move of step n (row ``steps``
    holds the final positions); ``states[n]`` and ``concentrated[n]`` give the
    state id at step n and the symbol its bet concentrates on (-1 for none).
    """

    positions: np.ndarray
    states: np.ndarray
    concentrated: np.ndarray
    state_tokens: tuple[State, ...]

    @property
    def steps(self) -> int:
        return int(self.states.size)


@dataclass(frozen=True)
class RunTrace:
    """Immutable result of a run: checkpoints plus the echo of what produced them."""

    heads: int
    alphabet_size: int
    initial_capital: Fraction
    hedge: Optional[Fraction]
    s_values: tuple[float, ...]
    checkpoints: tuple[Checkpoint, ...]
    config: dict[str, Any] = field(default_factory=dict)
    steps: Optional[StepLog] = None

    def at(self, n: int) -> Checkpoint:
        """Return the checkpoint taken after ``n`` steps."""
        for checkpoint in self.checkpoints:
            if checkpoint.n == n:
                return checkpoint
        raise KeyError(f"no checkpoint at n={n}")

    def growth_rate(self, n: int) -> float:
        """Per-step log2 growth of the capital over the first ``n`` steps."""
        checkpoint = self.at(n)
        return (checkpoint.log2_capital - _log2(self.initial_capital)) / n


def _log2(value: Fraction) -> float:
    if value == 0:
        return float("-inf")
    return math.log2(value.numerator) - math.log2(value.denominator)


class GaleEngine:
    """Sequential simulator for one gambler.

    One engine is strictly sequential. Engines sharing a sequence only read
    its memo, so many may run side by side.
    """

    def __init__(
        self,
        spec: GamblerSpec,
        *,
        compiled: Optional[CompiledGambler] = None,
        s_values: Sequence[float] = (),
        exact: bool = False,
        record_steps: bool = False,
        state_cap: int = 200_000,
    ):
        self.spec = spec
        self.compiled = compiled or compile_spec(spec, state_cap=state_cap)
        self.s_values = tuple(float(s) for s in s_values)
        self.n = 0
        self.state_id = self.compiled.initial_id
        self.positions = [0] * (spec.heads - 1)
        self._tally: list[int] = []
        self.exact_capital: Optional[Fraction] = spec.initial_capital if exact else None
        self._record = record_steps
        self._log_positions: list[list[int]] = []
        self._log_states: list[int] = []
        self._buffer: Any = b""

    def prefetch(self, sequence: SymbolSequence, stop: int) -> Any:
        """Make symbols [0, stop) available to the inner loop."""
        if len(self._buffer) < stop:
            limit = sequence.length_limit
            if limit is not None and stop > limit:
                raise IndexOverflowError(f"run needs {stop} symbols, sequence holds {limit}")
            want = max(stop, 2 * len(self._buffer))
            if limit is not None:
                want = min(want, limit)
            self._buffer = sequence.prefix(want).tobytes()
        return self._buffer

    def step(self, sequence: SymbolSequence) -> None:
        """Bet on X[n] with beta(q_n), then apply the transition of step n."""
        self.advance(sequence, 1)

    def advance(self, sequence: SymbolSequence, steps: int) -> None:
        """Run ``steps`` steps."""
        if steps <= 0:
            return
        stop = self.n + steps
        buf = self.prefetch(sequence, stop)
        compiled = self.compiled
        transitions = compiled.transitions
        outcome_rows = compiled.outcome_rows
        masks = compiled.masks
        weights = compiled.weights
        lead_weight = compiled.lead_weight
        trailing = range(len(self.positions))
        pos = self.positions
        sid = self.state_id
        tally = self._tally
        size = compiled.size
        exact = self.exact_capital
        record = self._record
        log_pos, log_states = self._log_positions, self._log_states

        for n in range(self.n, stop):
            b = buf[n]
            oid = outcome_rows[sid][b]
            if oid >= len(tally):
                tally.extend([0] * (oid + 1 - len(tally)))
            tally[oid] += 1
            if exact is not None:
                exact *= size * compiled.bet_rows[sid][b]
            if record:
                log_pos.append(pos.copy())
                log_states.append(sid)
            code = b * lead_weight
            for i in trailing:
                code += buf[pos[i]] * weights[i]
            entry = transitions[sid][code]
            if entry is None:
                entry = compiled.expand(sid, code)
            sid, mask_id = entry
            for i in masks[mask_id]:
                pos[i] += 1

        self.n = stop
        self.state_id = sid
        self.exact_capital = exact

    def branch(self, sequence: SymbolSequence, symbol: int) -> "GaleEngine":
        """Return a copy advanced one step as if X[n] were ``symbol``; ``self`` is untouched."""
        child = copy.copy(self)
        child.positions = self.positions.copy()
        child._tally = self._tally.copy()
        child._log_positions = [row.copy() for row in self._log_positions]
        child._log_states = self._log_states.copy()
        child._buffer = bytes(self._buffer[: self.n]) + bytes([symbol])
        child.advance(sequence, 1)
        return child

    @property
    def log2_capital(self) -> float:
        """log2 d_G(X[0..n-1]); -inf once a zero-probability symbol was realized."""
        base = _log2(self.spec.initial_capital)
        if base == float("-inf"):
            return base
        terms = []
        for oid, count in enumerate(self._tally):
            if not count:
                continue
            probability = self.compiled.outcomes[oid].probability
            if probability == 0:
                return float("-inf")
            terms.append(count * _log2(self.compiled.size * probability))
        return base + math.fsum(terms)

    def counters(self) -> tuple[int, int, int]:
        """Return (full wins, parity bets, parity losses) so far."""
        full = parity = losses = 0
        for oid, count in enumerate(self._tally):
            outcome = self.compiled.outcomes[oid]
            if outcome.full_win:
                full += count
            if outcome.parity_bet:
                parity += count
            if outcome.parity_loss:
                losses += count
        return full, parity, losses

    def log2_gale(self, s: float) -> float:
        """log2 d^(s)(X[0..n-1]) = log2 d + (s - 1) n log2 |Sigma|."""
        return self.log2_capital + (s - 1.0) * self.n * math.log2(self.compiled.size)

    def snapshot(self) -> Checkpoint:
        """Record the current engine state."""
        full, parity, losses = self.counters()
        log2_capital = self.log2_capital
        scale = self.n * math.log2(self.compiled.size)
        return Checkpoint(
            n=self.n,
            log2_capital=log2_capital,
            log2_gales=tuple(log2_capital + (s - 1.0) * scale for s in self.s_values),
            positions=tuple(self.positions),
            state_id=self.state_id,
            full_wins=full,
            parity_bets=parity,
            parity_losses=losses,
        )

    def step_log(self) -> StepLog:
        """Return the per-step record; needs ``record_steps=True``."""
        if not self._record:
            raise ValueError("engine was created without step recording")
        heads = len(self.positions)
        rows = self._log_positions + [list(self.positions)]
        positions = np.asarray(rows, dtype=np.int64).reshape(len(rows), heads)
        states = np.asarray(self._log_states, dtype=np.int64)
        concentrated = np.asarray(self.compiled.concentrated, dtype=np.int64)[states] if states.size else np.zeros(0, dtype=np.int64)
        return StepLog(
            positions=positions,
            states=states,
            concentrated=concentrated,
            state_tokens=tuple(self.compiled.tokens),
        )


def run(
    spec: GamblerSpec,
    sequence: SymbolSequence,
    n_max: int,
    checkpoints: Sequence[int],
    *,
    s_values: Sequence[float] = (),
    exact: bool = False,
    record_steps: bool = False,
    state_cap: int = 200_000,
    config: Optional[dict[str, Any]] = None,
) -> RunTrace:
    """Run ``spec`` over ``sequence`` for ``n_max`` steps and snapshot at ``checkpoints``.

    Raises:
        IndexOverflowError: When the sequence is shorter than ``n_max``.
        EmptyScheduleError: When no checkpoint lies in [1, n_max].
    """
    points = normalize_checkpoints(checkpoints, n_max)
    if sequence.alphabet.size != spec.alphabet.size:
        raise ValueError(
            f"gambler alphabet has {spec.alphabet.size} symbols, sequence has {sequence.alphabet.size}"
        )
    limit = sequence.length_limit
    if limit is not None and n_max > limit:
        raise IndexOverflowError(f"n_max={n_max} exceeds the {limit} stored symbols")
    engine = GaleEngine(
        spec, s_values=s_values, exact=exact, record_steps=record_steps, state_cap=state_cap
    )
    engine.prefetch(sequence, n_max)
    snapshots = []
    for point in points:
        engine.advance(sequence, point - engine.n)
        snapshots.append(engine.snapshot())
        logger.debug(f"{spec.name}: checkpoint n={point} log2 d={snapshots[-1].log2_capital:.6f}")
    engine.advance(sequence, n_max - engine.n)
    logger.info(f"{spec.name}: ran {n_max} steps, {len(engine.compiled.tokens)} states visited")
    return RunTrace(
        heads=spec.heads,
        alphabet_size=spec.alphabet.size,
        initial_capital=spec.initial_capital,
        hedge=spec.hedge,
        s_values=engine.s_values,
        checkpoints=tuple(snapshots),
        config=dict(config or {}),
        steps=engine.step_log() if record_steps else None,
    )
