import io
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.builtin_gamblers import builtin_spec
from src.core_model.alphabet import AlphabetDescriptor
from src.core_model.bets import BetDistribution
from src.core_model.random_specs import random_gambler_spec
from src.core_model.spec import GamblerSpec
from src.gale_engine import (
    GaleEngine,
    empirical_exponent,
    exact_crosscheck,
    gale_identity,
    parse_schedule,
    read_trace_header,
    rho_stat,
    run,
    success_evidence,
    trace_report,
    write_trace,
    write_trace_csv,
)
from src.sequence_forge import BitSource, SymbolSequence, load_sequence, make_sequence, write_sequence
from src.shared.errors import EmptyScheduleError, IndexOverflowError

BINARY = AlphabetDescriptor(block_bits=1)
WIN = math.log2(Fraction(63, 32))


def constant_bettor(bet: BetDistribution, alphabet: AlphabetDescriptor = BINARY) -> GamblerSpec:
    return GamblerSpec(
        heads=1,
        alphabet=alphabet,
        transition=lambda state, observation: (state, ()),
        bets=lambda state: bet,
        initial_state=0,
        name="constant",
    )


@pytest.fixture
def f_trace():
    spec = builtin_spec("f", h=2)
    sequence = make_sequence("f", h=2, block_bits=1, seed=0)
    return run(spec, sequence, 1_000, [250, 500, 1_000], s_values=[0.5, 0.9])


def test_fair_bets_keep_the_capital() -> None:
    trace = run(constant_bettor(BetDistribution.uniform(BINARY)), make_sequence("raw", h=None, block_bits=1, seed=1), 500, [10, 500])
    assert [c.log2_capital for c in trace.checkpoints] == [0.0, 0.0]
    assert trace.growth_rate(500) == 0.0


def test_zero_bet_on_a_realized_symbol_loses_everything() -> None:
    trace = run(constant_bettor(BetDistribution((Fraction(1), Fraction(0)))), make_sequence("raw", h=None, block_bits=1, seed=1), 200, [200])
    assert trace.at(200).log2_capital == float("-inf")


def test_f_parity_wins_every_parity_index(f_trace) -> None:
    last = f_trace.at(1_000)
    assert last.full_wins == 999 // 5
    assert last.parity_bets == last.full_wins
    assert last.parity_losses == 0
    assert last.log2_capital == pytest.approx(199 * WIN)
    assert last.positions == (400, 600)


def test_gale_columns_follow_the_capital(f_trace) -> None:
    for c in f_trace.checkpoints:
        assert c.log2_gales[0] == pytest.approx(c.log2_capital - 0.5 * c.n)
        assert c.log2_gales[1] == pytest.approx(c.log2_capital - 0.1 * c.n)


def test_analysis(f_trace) -> None:
    assert rho_stat(f_trace) == [(250, Fraction(49, 250)), (500, Fraction(99, 500)), (1_000, Fraction(199, 1_000))]
    assert rho_stat(f_trace, along=[500]) == [(500, Fraction(99, 500))]
    (n, exponent), *_ = reversed(empirical_exponent(f_trace))
    assert n == 1_000 and exponent == pytest.approx(199 * WIN / 1_000)
    verdicts = {v.s: v for v in success_evidence(f_trace)}
    assert verdicts[0.9].evidence and verdicts[0.9].positive
    assert not verdicts[0.5].evidence and not verdicts[0.5].positive


def test_rho_needs_a_hedge() -> None:
    trace = run(constant_bettor(BetDistribution.uniform(BINARY)), make_sequence("raw", h=None, block_bits=1, seed=1), 10, [10])
    with pytest.raises(ValueError):
        rho_stat(trace)


def test_step_log_shapes() -> None:
    spec = builtin_spec("phi", h=3)
    trace = run(spec, make_sequence("phi", h=3, block_bits=1, seed=2), 300, [300], record_steps=True)
    assert trace.steps is not None
    assert trace.steps.positions.shape == (301, 2)
    assert trace.steps.steps == 300
    assert tuple(trace.steps.positions[-1]) == trace.at(300).positions
    assert np.all(np.diff(trace.steps.positions, axis=0) >= 0)


@pytest.mark.parametrize(
    ("text", "kwargs", "expected"),
    [
        ("boundaries", {"family": "phi", "h": 2}, [2, 3, 18, 27, 162, 243]),
        ("boundaries", {"family": "f", "h": 2}, [5, 25, 125]),
        ("geometric:2", {}, [1, 2, 4, 8, 16, 32, 64, 128, 256]),
        ("5, 3,3,500", {}, [3, 5]),
    ],
)
def test_parse_schedule(text, kwargs, expected) -> None:
    assert parse_schedule(text, 300, **kwargs) == expected


def test_bad_schedules() -> None:
    with pytest.raises(EmptyScheduleError):
        parse_schedule("0,400", 300)
    with pytest.raises(ValueError):
        parse_schedule("boundaries", 300)
    with pytest.raises(ValueError):
        parse_schedule("ten,twenty", 300)
    with pytest.raises(ValueError):
        parse_schedule("geometric:1", 300)


def test_run_rejects_mismatched_inputs(tmp_path) -> None:
    spec = constant_bettor(BetDistribution.uniform(BINARY))
    with pytest.raises(EmptyScheduleError):
        run(spec, make_sequence("raw", h=None, block_bits=1, seed=0), 100, [200])
    with pytest.raises(ValueError):
        run(spec, make_sequence("phi", h=2, block_bits=1, seed=0), 100, [100])
    body = tmp_path / "raw.bin"
    write_sequence(make_sequence("raw", h=None, block_bits=1, seed=0), 64, body, seed=0)
    with pytest.raises(IndexOverflowError):
        run(spec, load_sequence(body), 100, [50])


def test_exact_crosscheck() -> None:
    spec = builtin_spec("phi", h=2)
    sequence = make_sequence("phi", h=2, block_bits=1, seed=4)
    assert exact_crosscheck(spec, sequence, 1_500) <= 1e-9
    with pytest.raises(ValueError):
        exact_crosscheck(spec, sequence, 10_001)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.booleans())
def test_gale_identity_holds_for_random_gamblers(seed: int, heads: int, dollar: bool) -> None:
    rng = np.random.default_rng(seed)
    alphabet = AlphabetDescriptor(block_bits=1, has_dollar=dollar)
    spec = random_gambler_spec(rng, heads=heads, alphabet=alphabet, states=4, zero_share=0.2)
    sequence = SymbolSequence.phi(BitSource.seeded(seed), 2) if dollar else SymbolSequence.raw(BitSource.seeded(seed))
    assert gale_identity(spec, sequence, 200) == []


def test_branched_engines_carry_the_child_capitals() -> None:
    spec = builtin_spec("f", h=2)
    sequence = make_sequence("f", h=2, block_bits=1, seed=2)
    engine = GaleEngine(spec, exact=True)
    engine.advance(sequence, 40)
    before = (engine.n, engine.exact_capital, list(engine.positions), engine.state_id)
    children = [engine.branch(sequence, b) for b in (0, 1)]
    assert (engine.n, engine.exact_capital, list(engine.positions), engine.state_id) == before
    assert all(child.n == 41 for child in children)
    assert sum(child.exact_capital for child in children) == 2 * engine.exact_capital
    engine.step(sequence)
    realized = children[int(sequence[40])]
    assert realized.exact_capital == engine.exact_capital
    assert realized.positions == engine.positions and realized.state_id == engine.state_id


def test_biased_bettor_splits_its_capital_between_children() -> None:
    engine = GaleEngine(constant_bettor(BetDistribution((Fraction(3, 4), Fraction(1, 4)))), exact=True)
    sequence = make_sequence("raw", h=None, block_bits=1, seed=1)
    assert [engine.branch(sequence, b).exact_capital for b in (0, 1)] == [Fraction(3, 2), Fraction(1, 2)]


def test_trace_files(tmp_path, f_trace) -> None:
    stream = io.StringIO()
    write_trace_csv(f_trace, stream)
    header, *rows = stream.getvalue().splitlines()
    assert header == "n,log2_capital,s_0.5,s_0.9,pi_1,pi_2,full_wins,parity_bets,parity_losses"
    assert len(rows) == 3

    path = write_trace(f_trace, tmp_path / "trace.csv")
    report = trace_report(path)
    assert report.checkpoints == 3
    assert report.final_n == 1_000
    assert report.rho == "0.199000000000"
    assert report.success_evidence == {"0.5": False, "0.9": True}
    assert report.parity_losses == 0


def test_trace_report_measures_growth_from_the_initial_capital(tmp_path) -> None:
    spec = GamblerSpec(
        heads=1,
        alphabet=BINARY,
        transition=lambda state, observation: (state, ()),
        bets=lambda state: BetDistribution.uniform(BINARY),
        initial_state=0,
        initial_capital=Fraction(4),
        name="constant",
    )
    trace = run(spec, make_sequence("raw", h=None, block_bits=1, seed=3), 400, [100, 400])
    assert trace.at(400).log2_capital == 2.0
    assert trace.growth_rate(400) == 0.0

    path = write_trace(trace, tmp_path / "c4.csv")
    header = read_trace_header(path)
    assert header is not None
    assert header.initial_capital == "4"
    assert header.heads == 1 and header.alphabet_size == 2
    report = trace_report(path)
    assert report.initial_capital == "4"
    assert report.growth_rate == "0.000000000000"
    assert report.exponent == "0.000000000000"


def test_trace_report_without_a_sidecar(tmp_path, f_trace) -> None:
    path = write_trace(f_trace, tmp_path / "trace.csv")
    (tmp_path / "trace.csv.json").unlink()
    report = trace_report(path)
    assert report.config == {}
    assert report.initial_capital == "1"
    assert report.final_n == 1_000
