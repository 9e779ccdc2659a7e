"""Registered verification checks.

Each check is a pure function of a ``VerifyConfiguration`` and a seed that
returns a ``CheckResult``. Failures are data: a check reports what it found
rather than raising.
"""

import logging
import math
from typing import Callable

import numpy as np

from src.builtin_gamblers import PhiTrackerParams, build_f_parity, build_phi_tracker, verify_tracking
from src.config.model import CheckResult
from src.core_model.alphabet import AlphabetDescriptor
from src.core_model.oblivious import oblivious_speeds, oblivious_trajectory, timer_orbit
from src.core_model.random_specs import random_gambler_spec, random_oblivious_spec
from src.core_model.spec import ObliviousGamblerSpec, embed_oblivious
from src.gale_engine.crosscheck import exact_crosscheck, gale_identity, simulate_oblivious
from src.gale_engine.engine import run
from src.recon_oracle import SCENARIOS, leaf_expansion, parents, reconstruction_roundtrip
from src.sequence_forge.boundaries import boundary_points, phi_boundaries
from src.sequence_forge.sequence import SymbolSequence
from src.sequence_forge.source import BitSource
from src.shared.errors import DriftExceededError
from src.shared.rationals import format_rational, parse_rational
from src.structure_lab import (
    IndexSet,
    beta,
    closure,
    delta_limits,
    disjointness_check,
    hier_leaf_set,
    overwritten_set_A,
    ratio_constants,
    tracker_full_wins,
    u_adaptive,
)
from src.structure_lab.limits import rho_limits
from src.verify_graph.configuration import VerifyConfiguration

logger = logging.getLogger("verify_graph")

Check = Callable[[VerifyConfiguration, int], CheckResult]
CHECKS: dict[str, Check] = {}

EXACT_STEPS = 2_000
IDENTITY_STEPS = 300


def register(name: str) -> Callable[[Check], Check]:
    """Add a check to the registry under ``name``."""

    def wrap(fn: Check) -> Check:
        CHECKS[name] = fn
        return fn

    return wrap


def _result(check: str, seed: int, passed: bool, summary: str, **details: object) -> CheckResult:
    return CheckResult(check=check, seed=seed, passed=passed, summary=summary, details=details)


@register("tracking")
def check_tracking(config: VerifyConfiguration, seed: int) -> CheckResult:
    """Run the Phi-tracker with step recording and compare every parity observation."""
    h = config.heads
    spec = build_phi_tracker(PhiTrackerParams(h=h, hedge=config.hedge_value))
    sequence = SymbolSequence.phi(BitSource.seeded(seed), h)
    trace = run(spec, sequence, config.horizon, [config.horizon], record_steps=True, state_cap=config.state_cap)
    report = verify_tracking(trace, h, sequence=sequence)
    return _result(
        "tracking",
        seed,
        report.passed,
        f"{report.checked} parity indices, {len(report.violations)} violations",
        checked=report.checked,
        violations=[v.model_dump() for v in report.violations[:20]],
        parity_losses=trace.checkpoints[-1].parity_losses,
    )


@register("reconstruction")
def check_reconstruction(config: VerifyConfiguration, seed: int) -> CheckResult:
    """Every scenario reconstructs exactly; window and split runs catch an unrecoverable erasure."""
    gamma = parse_rational(config.gamma)
    h, n = config.heads, config.horizon
    reports = [
        reconstruction_roundtrip(scenario, family="phi", h=h, n=n, seed=seed, gamma=gamma)
        for scenario in SCENARIOS
    ]
    reports.append(reconstruction_roundtrip("restore", family="f", h=h, n=n, seed=seed))
    mutated = [
        reconstruction_roundtrip(scenario, family="phi", h=h, n=n, seed=seed, gamma=gamma, mutate=True)
        for scenario in ("window", "split")
    ]
    failed = [f"{r.family}:{r.scenario}" for r in reports if not r.passed]
    missed = [r.scenario for r in mutated if r.passed]
    caught = not missed
    return _result(
        "reconstruction",
        seed,
        not failed and caught,
        f"{len(reports) - len(failed)}/{len(reports)} scenarios exact, mutation {'caught' if caught else 'missed'}",
        failed=failed,
        mutations_missed=missed,
        mutation_erased={r.scenario: r.erased + r.erased_r for r in mutated},
    )


def _random_alphabet(rng: np.random.Generator) -> AlphabetDescriptor:
    return AlphabetDescriptor(block_bits=int(rng.integers(1, 3)))


@register("gale-identity")
def check_gale_identity(config: VerifyConfiguration, seed: int) -> CheckResult:
    """Exact averaging condition of random gamblers along random base prefixes."""
    rng = np.random.default_rng(seed)
    failures: dict[str, list[int]] = {}
    for sample in range(config.samples):
        alphabet = _random_alphabet(rng)
        spec = random_gambler_spec(
            rng,
            heads=int(rng.integers(1, 4)),
            alphabet=alphabet,
            states=int(rng.integers(1, 5)),
            zero_share=0.2,
        )
        sequence = SymbolSequence.raw(BitSource.seeded(seed * 1_000 + sample), alphabet.block_bits)
        bad = gale_identity(spec, sequence, min(config.horizon, IDENTITY_STEPS), state_cap=config.state_cap)
        if bad:
            failures[f"{sample}:{spec.name}"] = bad[:10]
    return _result(
        "gale-identity",
        seed,
        not failures,
        f"{config.samples - len(failures)}/{config.samples} random gamblers satisfy the identity",
        failures=failures,
    )


def _random_oblivious(rng: np.random.Generator) -> ObliviousGamblerSpec:
    return random_oblivious_spec(
        rng,
        heads=int(rng.integers(2, 5)),
        alphabet=AlphabetDescriptor(block_bits=1),
        data_states=2,
        timer_states=int(rng.integers(1, 9)),
    )


@register("speed-bound")
def check_speed_bound(config: VerifyConfiguration, seed: int) -> CheckResult:
    """eta_i n - |T| <= pi_i(n) <= eta_i n + |T| for random oblivious gamblers."""
    rng = np.random.default_rng(seed)
    n = config.horizon
    steps = np.arange(n + 1, dtype=np.int64)
    worst = 0.0
    violations = []
    for sample in range(config.samples):
        ospec = _random_oblivious(rng)
        orbit = timer_orbit(ospec)
        timer_size = len(orbit.states)
        positions = oblivious_trajectory(ospec, n)
        for head, eta in enumerate(oblivious_speeds(ospec)):
            # scaled by the denominator to stay in integers
            gap = np.abs(eta.denominator * positions[:, head] - eta.numerator * steps)
            bound = eta.denominator * timer_size
            worst = max(worst, float(gap.max()) / bound)
            if (gap > bound).any():
                violations.append({"sample": sample, "head": head + 1, "speed": format_rational(eta)})
    return _result(
        "speed-bound",
        seed,
        not violations,
        f"{config.samples} oblivious gamblers to n={n}, worst deviation {worst:.3f} of |T|",
        violations=violations,
    )


def _embedding_mismatch(ospec: ObliviousGamblerSpec, sequence: SymbolSequence, n: int) -> list[str]:
    trace = run(embed_oblivious(ospec), sequence, n, [n], record_steps=True)
    assert trace.steps is not None
    direct_positions, direct_log2 = simulate_oblivious(ospec, sequence, n)
    problems = []
    if not np.array_equal(trace.steps.positions, direct_positions):
        problems.append("embedded positions")
    if not np.array_equal(oblivious_trajectory(ospec, n), direct_positions):
        problems.append("closed-form trajectory")
    embedded_log2 = trace.checkpoints[-1].log2_capital
    if not math.isclose(embedded_log2, direct_log2, rel_tol=1e-9, abs_tol=1e-9):
        problems.append(f"capital {embedded_log2!r} != {direct_log2!r}")
    return problems


@register("embedding")
def check_embedding(config: VerifyConfiguration, seed: int) -> CheckResult:
    """The adaptive embedding of an oblivious gambler replays its direct simulation."""
    rng = np.random.default_rng(seed)
    n = min(config.horizon, EXACT_STEPS)
    source = BitSource.seeded(seed)
    problems: dict[str, list[str]] = {}
    ospec = build_f_parity(config.heads, config.hedge_value)
    found = _embedding_mismatch(ospec, SymbolSequence.f(source, config.heads), n)
    if found:
        problems[ospec.name] = found
    raw = SymbolSequence.raw(source)
    for sample in range(config.samples):
        ospec = _random_oblivious(rng)
        found = _embedding_mismatch(ospec, raw, n)
        if found:
            problems[f"{sample}:{ospec.name}"] = found
    return _result(
        "embedding",
        seed,
        not problems,
        f"{config.samples + 1} oblivious gamblers over {n} steps, {len(problems)} mismatched",
        problems=problems,
    )


@register("drift")
def check_drift(config: VerifyConfiguration, seed: int) -> CheckResult:
    """Log-domain capital stays within tolerance of the exact rational capital."""
    rng = np.random.default_rng(seed)
    n = min(config.horizon, EXACT_STEPS)
    h = config.heads
    alphabet = _random_alphabet(rng)
    pairs = [
        (
            build_phi_tracker(PhiTrackerParams(h=h, hedge=config.hedge_value)),
            SymbolSequence.phi(BitSource.seeded(seed), h),
        ),
        (
            random_gambler_spec(rng, heads=h, alphabet=alphabet, states=3),
            SymbolSequence.raw(BitSource.seeded(seed), alphabet.block_bits),
        ),
    ]
    deviations: dict[str, str] = {}
    drifted: list[str] = []
    for spec, sequence in pairs:
        try:
            deviations[spec.name] = f"{exact_crosscheck(spec, sequence, n):.3e}"
        except DriftExceededError as err:
            drifted.append(str(err))
    return _result(
        "drift",
        seed,
        not drifted,
        f"{len(pairs) - len(drifted)}/{len(pairs)} gamblers within tolerance over {n} steps",
        deviations=deviations,
        drifted=drifted,
    )


@register("disjointness")
def check_disjointness(config: VerifyConfiguration, seed: int) -> CheckResult:
    """Some head index keeps the look-back window clear of its leaf closure."""
    h, d, horizon = config.heads, config.depth, config.horizon
    constants = ratio_constants(h, d)
    threshold = constants.threshold
    if threshold is None or threshold > horizon:
        return _result(
            "disjointness",
            seed,
            True,
            f"skipped: window threshold {threshold} lies beyond the horizon {horizon}",
            gamma=format_rational(constants.gamma),
        )
    rng = np.random.default_rng(seed)
    gamblers = {
        "phi-tracker": (
            build_phi_tracker(PhiTrackerParams(h=h, hedge=config.hedge_value)),
            SymbolSequence.phi(BitSource.seeded(seed), h),
        ),
        "random": (
            random_gambler_spec(rng, heads=h, alphabet=AlphabetDescriptor(block_bits=1), states=4),
            SymbolSequence.f(BitSource.seeded(seed), h),
        ),
    }
    traces = {
        name: run(spec, sequence, horizon, [horizon], record_steps=True, state_cap=config.state_cap)
        for name, (spec, sequence) in gamblers.items()
    }
    uncovered: dict[str, list[tuple[int, int]]] = {name: [] for name in gamblers}
    for _ in range(config.samples):
        n = int(rng.integers(threshold, horizon + 1))
        m = int(rng.integers(math.ceil(constants.gamma * n), n + 1))
        closures = [closure(hier_leaf_set(h, d, m, n, j), h, n) for j in range(1, h + 1)]
        for name, trace in traces.items():
            if disjointness_check(u_adaptive(m, n, trace), closures) is None:
                uncovered[name].append((m, n))
    worst = max(len(windows) for windows in uncovered.values())
    return _result(
        "disjointness",
        seed,
        worst == 0,
        f"{config.samples - worst}/{config.samples} windows leave some closure untouched for every gambler",
        gamma=format_rational(constants.gamma),
        threshold=threshold,
        fully_covered=uncovered,
    )


@register("beta")
def check_beta(config: VerifyConfiguration, seed: int) -> CheckResult:
    """Exact beta/(h+1) at t_9 and s_11 against the two closed-form limits."""
    h = config.heads
    delta_1, delta_2 = delta_limits(h)
    at_t = beta(h, phi_boundaries(h, 9)[1]) / (h + 1)
    at_s = beta(h, phi_boundaries(h, 11)[0]) / (h + 1)
    gaps = (abs(float(at_t - delta_1)), abs(float(at_s - delta_2)))
    return _result(
        "beta",
        seed,
        gaps[0] <= 1e-3 and gaps[1] <= 1e-4,
        f"|beta(t_9)/(h+1) - delta_1| = {gaps[0]:.2e}, |beta(s_11)/(h+1) - delta_2| = {gaps[1]:.2e}",
        delta_1=format_rational(delta_1),
        delta_2=format_rational(delta_2),
    )


FIGURE_VALUES = {
    "F_3 parents of 300": (lambda: parents("f", 2, 300), (120, 180)),
    "Phi_2 parents of 24": (lambda: parents("phi", 2, 24), (8,)),
    "F_3 leaves of 300 at depth 1": (lambda: leaf_expansion("f", 2, 300, 1).leaves, frozenset({120, 180})),
    "F_3 leaves of 300 at depth 2": (lambda: leaf_expansion("f", 2, 300, 2).leaves, frozenset({48, 108})),
    "V_1(298, 305) at depth 2": (
        lambda: hier_leaf_set(2, 2, 298, 305, 1),
        IndexSet.from_points([48, 122, 298, 299, 301, 302, 303, 304]),
    ),
    "closure of 48 up to 300": (lambda: closure([48], 2, 300), IndexSet.from_points([48, 80, 120, 200, 300])),
    "overwritten indices of Phi_2 up to 30": (
        lambda: overwritten_set_A(2, 30),
        IndexSet.from_points([2, 3, 18, 21, 24, 27]),
    ),
}


@register("figures")
def check_figures(config: VerifyConfiguration, seed: int) -> CheckResult:
    """Fixed dependency and leaf-set values of the small worked instances."""
    wrong = {}
    for label, (compute, expected) in FIGURE_VALUES.items():
        got = compute()
        if got != expected:
            wrong[label] = repr(got)
    return _result(
        "figures",
        seed,
        not wrong,
        f"{len(FIGURE_VALUES) - len(wrong)}/{len(FIGURE_VALUES)} values match",
        wrong=wrong,
    )


@register("rho")
def check_rho(config: VerifyConfiguration, seed: int) -> CheckResult:
    """Full-win counts of the tracker at every boundary equal the closed-form count."""
    h, horizon = config.heads, config.horizon
    points = [p for p in boundary_points(h, horizon) if p >= 1]
    spec = build_phi_tracker(PhiTrackerParams(h=h, hedge=config.hedge_value))
    sequence = SymbolSequence.phi(BitSource.seeded(seed), h)
    trace = run(spec, sequence, horizon, points, state_cap=config.state_cap)
    mismatched = {
        str(checkpoint.n): checkpoint.full_wins
        for checkpoint in trace.checkpoints
        if checkpoint.full_wins != tracker_full_wins(h, checkpoint.n)
    }
    last = trace.checkpoints[-1]
    rho_1, _ = rho_limits(h)
    return _result(
        "rho",
        seed,
        not mismatched,
        f"{len(points) - len(mismatched)}/{len(points)} boundaries match, rho({last.n}) = {last.full_wins / last.n:.6f}",
        rho_1=format_rational(rho_1),
        mismatched=mismatched,
    )
