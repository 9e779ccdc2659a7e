import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.builtin_gamblers import PhiTrackerParams, build_f_parity, build_phi_baseline, build_phi_tracker
from src.core_model.alphabet import AlphabetDescriptor
from src.core_model.bets import BetDistribution
from src.core_model.oblivious import oblivious_speeds, oblivious_trajectory, timer_orbit
from src.core_model.random_specs import random_gambler_spec, random_oblivious_spec
from src.core_model.spec import GamblerSpec, embed_oblivious
from src.core_model.spec_file import format_spec_file, parse_spec_file
from src.core_model.validation import validate_spec
from src.gale_engine import run, simulate_oblivious
from src.sequence_forge.sequence import SymbolSequence
from src.sequence_forge.source import BitSource
from src.shared.errors import (
    MaskWidthMismatchError,
    NonStochasticBetsError,
    SpecFormatError,
    TotalityUnknownError,
    TransitionUndefinedError,
)

COPY_LAST = """
# bets 3/4 on a repeat of the last symbol
alphabet L=1 dollar=no
heads 1
states last0 last1
initial last0
capital 1
bet last0 3/4 1/4
bet last1 1/4 3/4
trans last0 0 -> last0 -
trans last0 1 -> last1 -
trans last1 0 -> last0 -
trans last1 * -> last1 -
"""


def test_alphabet_symbols() -> None:
    alphabet = AlphabetDescriptor(block_bits=2, has_dollar=True)
    assert alphabet.size == 5
    assert alphabet.dollar == 4
    assert alphabet.format_symbol(2) == "10"
    assert alphabet.format_symbol(4) == "$"
    assert alphabet.parse_symbol("01") == 1
    assert alphabet.parse_symbol("$") == 4
    with pytest.raises(ValueError):
        AlphabetDescriptor(block_bits=1).parse_symbol("$")


def test_bet_rows_must_be_stochastic() -> None:
    with pytest.raises(NonStochasticBetsError):
        BetDistribution((Fraction(1, 2), Fraction(1, 4)))
    with pytest.raises(NonStochasticBetsError):
        BetDistribution((Fraction(3, 2), Fraction(-1, 2)))


def test_chi_and_nu_shapes() -> None:
    alphabet = AlphabetDescriptor(block_bits=1, has_dollar=True)
    hedge = Fraction(1, 64)
    chi = BetDistribution.chi(alphabet, 1, hedge)
    assert list(chi) == [Fraction(1, 128), Fraction(63, 64), Fraction(1, 128)]
    assert chi.concentrated_symbol(hedge) == 1
    nu = BetDistribution.nu(alphabet, hedge)
    assert list(nu) == [Fraction(63, 128), Fraction(63, 128), Fraction(1, 64)]
    assert nu.concentrated_symbol(hedge) is None
    assert chi.concentrated_symbol(None) is None


def test_parse_spec_file_and_run_by_hand() -> None:
    spec = parse_spec_file(COPY_LAST)
    assert spec.heads == 1
    sequence = SymbolSequence.raw(BitSource.seeded(3))
    n = 200
    trace = run(spec, sequence, n, [n], exact=True)
    symbols = sequence.prefix(n)
    expected = Fraction(1)
    last = 0
    for b in symbols:
        expected *= 2 * (Fraction(3, 4) if b == last else Fraction(1, 4))
        last = int(b)
    log2_expected = math.log2(expected.numerator) - math.log2(expected.denominator)
    assert trace.at(n).log2_capital == pytest.approx(log2_expected, abs=1e-9)


def test_formatted_spec_behaves_like_the_original() -> None:
    spec = build_phi_tracker(PhiTrackerParams(h=2))
    again = parse_spec_file(format_spec_file(spec))
    sequence = SymbolSequence.phi(BitSource.seeded(1), 2)
    first = run(spec, sequence, 300, [100, 300])
    second = run(again, sequence, 300, [100, 300])
    assert [c.log2_capital for c in first.checkpoints] == [c.log2_capital for c in second.checkpoints]
    assert [c.full_wins for c in first.checkpoints] == [c.full_wins for c in second.checkpoints]
    assert again.metadata["family"] == "phi"


@pytest.mark.parametrize(
    "text",
    [
        "heads 1\nstates a\ninitial a",
        COPY_LAST + "frobnicate 3\n",
        COPY_LAST.replace("trans last1 * -> last1 -", "trans last1 * -> last1 1"),
        COPY_LAST.replace("bet last0 3/4 1/4", "bet last0 0.75 0.25"),
    ],
)
def test_spec_file_errors(text: str) -> None:
    with pytest.raises(SpecFormatError):
        parse_spec_file(text)


def test_validate_reports_missing_rows() -> None:
    spec = parse_spec_file(COPY_LAST.replace("trans last1 * -> last1 -", ""))
    with pytest.raises(TransitionUndefinedError):
        validate_spec(spec)


def test_validate_rejects_wrong_mask_width() -> None:
    spec = GamblerSpec(
        heads=2,
        alphabet=AlphabetDescriptor(block_bits=1),
        transition=lambda state, observation: (state, ()),
        bets=lambda state: BetDistribution.uniform(AlphabetDescriptor(block_bits=1)),
        initial_state=0,
    )
    with pytest.raises(MaskWidthMismatchError):
        validate_spec(spec)


def test_validate_gives_up_on_unbounded_state_spaces() -> None:
    spec = GamblerSpec(
        heads=1,
        alphabet=AlphabetDescriptor(block_bits=1),
        transition=lambda state, observation: (state + 1, ()),  # type: ignore[operator]
        bets=lambda state: BetDistribution.uniform(AlphabetDescriptor(block_bits=1)),
        initial_state=0,
    )
    with pytest.raises(TotalityUnknownError):
        validate_spec(spec, state_cap=50)


def test_validate_counts_reachable_states() -> None:
    report = validate_spec(parse_spec_file(COPY_LAST))
    assert report.valid
    assert report.reachable_states == 2
    assert report.transitions_checked == 4


def test_f_parity_speeds_and_positions() -> None:
    ospec = build_f_parity(2)
    assert oblivious_speeds(ospec) == [Fraction(2, 5), Fraction(3, 5)]
    orbit = timer_orbit(ospec)
    assert orbit.transient == 0 and orbit.cycle_length == 5
    positions = oblivious_trajectory(ospec, 300)
    assert positions[299].tolist() == [120, 180]


def test_baseline_speeds() -> None:
    params = PhiTrackerParams(h=3)
    assert oblivious_speeds(build_phi_baseline(params, 2)) == [Fraction(1, 4), Fraction(1, 2)]
    assert oblivious_speeds(build_phi_baseline(params, 3)) == [Fraction(1, 4), Fraction(3, 4)]
    with pytest.raises(ValueError):
        build_phi_baseline(params, 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.integers(1, 6))
def test_speed_bound_holds_for_random_oblivious_gamblers(seed: int, heads: int, timer_states: int) -> None:
    rng = np.random.default_rng(seed)
    ospec = random_oblivious_spec(
        rng, heads=heads, alphabet=AlphabetDescriptor(block_bits=1), data_states=2, timer_states=timer_states
    )
    n = 2_000
    size = len(timer_orbit(ospec).states)
    positions = oblivious_trajectory(ospec, n)
    steps = np.arange(n + 1)
    for head, eta in enumerate(oblivious_speeds(ospec)):
        deviation = np.abs(eta.denominator * positions[:, head] - eta.numerator * steps)
        assert deviation.max() <= eta.denominator * size


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_embedding_replays_the_direct_simulation(seed: int) -> None:
    rng = np.random.default_rng(seed)
    ospec = random_oblivious_spec(
        rng, heads=3, alphabet=AlphabetDescriptor(block_bits=1), data_states=3, timer_states=4
    )
    sequence = SymbolSequence.raw(BitSource.seeded(seed))
    trace = run(embed_oblivious(ospec), sequence, 500, [500], record_steps=True)
    positions, log2_capital = simulate_oblivious(ospec, sequence, 500)
    assert trace.steps is not None
    assert np.array_equal(trace.steps.positions, positions)
    assert trace.at(500).log2_capital == pytest.approx(log2_capital, abs=1e-9)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.booleans())
def test_random_gamblers_validate(seed: int, heads: int, dollar: bool) -> None:
    rng = np.random.default_rng(seed)
    alphabet = AlphabetDescriptor(block_bits=1, has_dollar=dollar)
    spec = random_gambler_spec(rng, heads=heads, alphabet=alphabet, states=3)
    report = validate_spec(spec)
    assert report.valid
    assert report.reachable_states <= 3
