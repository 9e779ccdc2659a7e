"""Cross-checks of the log-domain engine against exact and direct computations."""

import logging
import math
from fractions import Fraction

import numpy as np

from src.core_model.compile import compile_spec
from src.core_model.spec import GamblerSpec, ObliviousGamblerSpec
from src.gale_engine.engine import GaleEngine
from src.sequence_forge.sequence import SymbolSequence
from src.shared.errors import DriftExceededError

logger = logging.getLogger("gale_engine")

EXACT_PREFIX_LIMIT = 10_000
DRIFT_TOLERANCE = 1e-9


def _log2_fraction(value: Fraction) -> float:
    if value == 0:
        return float("-inf")
    return math.log2(value.numerator) - math.log2(value.denominator)


def relative_deviation(log2_float: float, exact: Fraction) -> float:
    """Return |2^log2_float - exact| / exact, computed without leaving log space."""
    log2_exact = _log2_fraction(exact)
    if log2_exact == float("-inf"):
        return 0.0 if log2_float == float("-inf") else float("inf")
    if log2_float == float("-inf"):
        return 1.0
    return abs(math.expm1((log2_float - log2_exact) * math.log(2)))


def exact_crosscheck(
    spec: GamblerSpec,
    sequence: SymbolSequence,
    n: int,
    *,
    tolerance: float = DRIFT_TOLERANCE,
    state_cap: int = 200_000,
) -> float:
    """Run ``n`` steps in both modes and return the largest relative deviation.

    Raises:
        DriftExceededError: When any prefix deviates by more than ``tolerance``.
    """
    if n > EXACT_PREFIX_LIMIT:
        raise ValueError(f"exact mode is limited to prefixes of {EXACT_PREFIX_LIMIT} symbols, got {n}")
    engine = GaleEngine(spec, exact=True, state_cap=state_cap)
    engine.prefetch(sequence, n)
    worst = relative_deviation(engine.log2_capital, spec.initial_capital)
    for _ in range(n):
        engine.step(sequence)
        assert engine.exact_capital is not None
        deviation = relative_deviation(engine.log2_capital, engine.exact_capital)
        if deviation > tolerance:
            raise DriftExceededError(
                f"{spec.name}: log-domain capital drifted by {deviation:.3e} at n={engine.n}"
            )
        worst = max(worst, deviation)
    logger.info(f"{spec.name}: exact cross-check over {n} steps, worst deviation {worst:.3e}")
    return worst


def gale_identity(spec: GamblerSpec, sequence: SymbolSequence, n: int, *, state_cap: int = 200_000) -> list[int]:
    """Check sum_b d(wb) = |Sigma| d(w) exactly along the first ``n`` prefixes.

    Each d(wb) is the exact capital of an engine branched on ``b`` at that
    prefix. Since d^(s)(w) = |Sigma|^((s-1)|w|) d(w), this is the s-gale
    averaging condition for every s at once. Returns the prefix lengths
    where it fails.
    """
    compiled = compile_spec(spec, state_cap=state_cap)
    engine = GaleEngine(spec, compiled=compiled, exact=True)
    engine.prefetch(sequence, n)
    size = compiled.size
    failures = []
    for _ in range(n):
        capital = engine.exact_capital
        assert capital is not None
        total = sum((engine.branch(sequence, b).exact_capital or Fraction(0) for b in range(size)), Fraction(0))
        if total != size * capital:
            failures.append(engine.n)
            logger.warning(f"{spec.name}: children at n={engine.n} sum to {total}, expected {size * capital}")
        engine.step(sequence)
    return failures


def simulate_oblivious(
    ospec: ObliviousGamblerSpec, sequence: SymbolSequence, n: int
) -> tuple[np.ndarray, float]:
    """Simulate P x T directly, without the adaptive embedding.

    Returns the trailing head positions pi_i(0..n) and log2 d_G(X[0..n-1]).
    """
    trailing = ospec.heads - 1
    symbols = sequence.prefix(n)
    positions = np.zeros((n + 1, trailing), dtype=np.int64)
    pos = [0] * trailing
    data, timer = ospec.initial_data, ospec.initial_timer
    size = ospec.alphabet.size
    terms = []
    log2_capital = _log2_fraction(ospec.initial_capital)
    for step in range(n):
        b = int(symbols[step])
        probability = ospec.bets(data, timer)[b]
        if probability == 0:
            log2_capital = float("-inf")
        else:
            terms.append(_log2_fraction(size * probability))
        observation = tuple(int(symbols[p]) for p in pos) + (b,)
        mask = ospec.timer_mask(timer)
        data = ospec.data_transition(data, observation)
        timer = ospec.timer_transition(timer)
        for i in range(trailing):
            if mask[i]:
                pos[i] += 1
        positions[step + 1] = pos
    if log2_capital != float("-inf"):
        log2_capital += math.fsum(terms)
    return positions, log2_capital
