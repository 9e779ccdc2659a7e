import io
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.stateful import RuleBasedStateMachine, invariant, rule

from src.core_model.alphabet import AlphabetDescriptor
from src.core_model.oblivious import oblivious_speeds, oblivious_trajectory, timer_orbit
from src.core_model.random_specs import random_gambler_spec, random_oblivious_spec
from src.gale_engine import run
from src.sequence_forge import make_sequence
from src.sequence_forge.sequence import SymbolSequence
from src.sequence_forge.source import BitSource
from src.structure_lab import (
    IndexSet,
    beta,
    bound_evaluators,
    closure,
    convergence_rows,
    delta_limits,
    disjointness_check,
    hier_leaf_set,
    index_set_report,
    masked_string,
    overwritten_set_A,
    phi_ref_sets,
    ratio_constants,
    rho_limits,
    u_adaptive,
    u_oblivious,
    union_all,
)
from src.structure_lab.limits import write_rows_csv


def test_index_set_basics() -> None:
    s = IndexSet([(5, 9), (1, 2), (3, 3), (20, 19)])
    assert s.intervals == ((1, 3), (5, 9))
    assert len(s) == 8
    assert 3 in s and 4 not in s and "3" not in s
    assert s.min == 1 and s.max == 9
    assert (s - IndexSet.span(2, 6)).intervals == ((1, 1), (7, 9))
    assert (s & IndexSet.span(3, 5)).intervals == ((3, 3), (5, 5))
    assert s.clip(6, 100) == IndexSet.span(6, 9)
    assert IndexSet.span(-4, 2) == IndexSet.span(0, 2)
    with pytest.raises(ValueError):
        IndexSet().min


class IndexSetMachine(RuleBasedStateMachine):
    """Compare IndexSet against a plain set of integers."""

    def __init__(self) -> None:
        super().__init__()
        self.index_set = IndexSet()
        self.model: set[int] = set()

    spans = st.tuples(st.integers(0, 60), st.integers(0, 12))

    @rule(span=spans)
    def add(self, span: tuple[int, int]) -> None:
        lo, width = span
        self.index_set = self.index_set | IndexSet.span(lo, lo + width)
        self.model |= set(range(lo, lo + width + 1))

    @rule(span=spans)
    def remove(self, span: tuple[int, int]) -> None:
        lo, width = span
        self.index_set = self.index_set - IndexSet.span(lo, lo + width)
        self.model -= set(range(lo, lo + width + 1))

    @rule(span=spans)
    def keep(self, span: tuple[int, int]) -> None:
        lo, width = span
        self.index_set = self.index_set & IndexSet.span(lo, lo + 3 * width)
        self.model &= set(range(lo, lo + 3 * width + 1))

    @invariant()
    def same_members(self) -> None:
        assert set(self.index_set) == self.model
        assert len(self.index_set) == len(self.model)

    @invariant()
    def canonical(self) -> None:
        intervals = self.index_set.intervals
        assert all(lo <= hi for lo, hi in intervals)
        assert all(a[1] + 1 < b[0] for a, b in zip(intervals, intervals[1:]))
        assert self.index_set == IndexSet.from_points(self.model)


IndexSetMachine.TestCase.settings = settings(max_examples=50, stateful_step_count=30, deadline=None)
TestIndexSet = IndexSetMachine.TestCase


def test_union_all() -> None:
    sets = [IndexSet.span(0, 2), IndexSet.from_points([3, 7]), IndexSet()]
    assert union_all(sets).intervals == ((0, 3), (7, 7))


def test_overwritten_indices() -> None:
    assert list(overwritten_set_A(2, 30)) == [2, 3, 18, 21, 24, 27]


def test_phi_reference_sets() -> None:
    refs = phi_ref_sets(2, 20, 26, 1)
    v1, w1 = refs[1]
    v2, _ = refs[2]
    assert list(v1) == [7, 8]
    assert list(v2) == [14, 16]
    assert w1 == IndexSet.span(0, 20) - v1
    assert v1.isdisjoint(w1)


def test_oblivious_look_back_window() -> None:
    assert u_oblivious(100, 200, [Fraction(1, 2)], 3) == IndexSet.span(47, 103)
    assert u_oblivious(100, 200, [Fraction(2, 5), Fraction(3, 5)], 5) == IndexSet.span(35, 125)
    with pytest.raises(ValueError):
        u_oblivious(5, 4, [Fraction(1, 2)], 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.integers(1, 5), st.data())
def test_oblivious_window_holds_every_read_below_m(seed: int, heads: int, timer_states: int, data) -> None:
    rng = np.random.default_rng(seed)
    ospec = random_oblivious_spec(
        rng, heads=heads, alphabet=AlphabetDescriptor(block_bits=1), data_states=2, timer_states=timer_states
    )
    n = data.draw(st.integers(1, 600))
    m = data.draw(st.integers(0, n))
    window = u_oblivious(m, n, oblivious_speeds(ospec), len(timer_orbit(ospec).states))
    positions = oblivious_trajectory(ospec, n)[m:]
    for p in np.unique(positions[positions < m]).tolist():
        assert p in window


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.data())
def test_adaptive_window_holds_every_read_below_m(seed: int, heads: int, data) -> None:
    rng = np.random.default_rng(seed)
    spec = random_gambler_spec(rng, heads=heads, alphabet=AlphabetDescriptor(block_bits=1), states=4)
    n = data.draw(st.integers(1, 600))
    m = data.draw(st.integers(1, n))
    trace = run(spec, SymbolSequence.raw(BitSource.seeded(seed)), n, [n], record_steps=True)
    assert trace.steps is not None
    window = u_adaptive(m, n, trace)
    positions = trace.steps.positions[m - 1 : n + 1]
    assert len(window) == 0 or window.max < m
    for p in np.unique(positions[positions < m]).tolist():
        assert p in window


def test_leaf_sets_and_closures() -> None:
    leaves = hier_leaf_set(2, 2, 298, 305, 1)
    assert list(leaves) == [48, 122, 298, 299, 301, 302, 303, 304]
    assert list(hier_leaf_set(2, 2, 298, 305, 1, strict=True)) == list(leaves)
    assert 48 not in hier_leaf_set(2, 1, 298, 305, 1)
    assert list(closure([48], 2, 300)) == [48, 80, 120, 200, 300]
    with pytest.raises(ValueError):
        hier_leaf_set(2, 2, 298, 305, 3)


def test_disjointness_check() -> None:
    closures = [IndexSet.span(0, 10), IndexSet.span(20, 30)]
    assert disjointness_check(IndexSet.span(5, 8), closures) == 2
    assert disjointness_check(IndexSet.span(40, 41), closures) == 1
    assert disjointness_check(IndexSet.from_points([5, 25]), closures) is None


def test_ratio_constants_for_two_heads() -> None:
    constants = ratio_constants(2, 2)
    t1, t2 = constants.ratios
    assert t1 == {Fraction(2, 5), Fraction(2, 3), Fraction(4, 25), Fraction(4, 15), Fraction(4, 9), Fraction(20, 27)}
    assert t2 == {Fraction(3, 5), Fraction(9, 25), Fraction(9, 10)}
    assert t1.isdisjoint(t2)
    assert constants.zeta == Fraction(99, 2500)
    assert constants.gamma == Fraction(10099, 10198)
    assert constants.threshold == 51


def test_limits() -> None:
    assert delta_limits(2) == (Fraction(9, 80), Fraction(1, 480))
    assert rho_limits(2) == (Fraction(1, 8), Fraction(1, 48))
    assert beta(2, 27) == Fraction(1, 3)
    with pytest.raises(ValueError):
        beta(2, 0)


def test_beta_approaches_its_limits() -> None:
    delta_1, delta_2 = delta_limits(2)
    t_9 = 3**19
    s_11 = 2 * 3**22
    assert abs(beta(2, t_9) / 3 - delta_1) < Fraction(1, 1000)
    assert abs(beta(2, s_11) / 3 - delta_2) < Fraction(1, 10_000)


def test_bound_evaluators() -> None:
    bounds = bound_evaluators(2)
    row = bounds.as_dict()
    assert row["delta_1"] == "9/80"
    assert row["rho_2"] == "1/48"
    assert row["hierarchy_upper"] == "4/5"
    assert bounds.separation > 0
    assert bounds.oblivious_lower < bounds.oblivious_strong_lower


def test_convergence_rows_csv() -> None:
    rows = convergence_rows(2, 3)
    assert [r["point"] for r in rows] == ["s_0", "t_0", "s_1", "t_1", "s_2", "t_2", "s_3", "t_3"]
    assert rows[3]["limit"] == "9/80" and rows[2]["limit"] == "1/480"
    assert rows[0]["beta_scaled"] == ""
    stream = io.StringIO()
    write_rows_csv(rows, stream)
    assert stream.getvalue().splitlines()[0] == "k,point,n,rho,beta_scaled,limit"


def test_masked_string() -> None:
    sequence = make_sequence("raw", h=None, block_bits=2, seed=3)
    masked = masked_string(sequence, IndexSet.span(4, 6) | IndexSet.span(50, 60), 20)
    assert len(masked) == 21
    assert masked.known == IndexSet.span(4, 6)
    assert [masked[i] for i in range(4, 7)] == sequence.prefix(7)[4:].tolist()
    assert masked[3] == 0 and not masked.is_known(3)
    with pytest.raises(IndexError):
        masked[21]


def test_index_set_report() -> None:
    report = index_set_report({"h": 2}, {"A": overwritten_set_A(2, 30)}, {"ok": True})
    assert report.sets["A"] == [(2, 3), (18, 18), (21, 21), (24, 24), (27, 27)]
    assert report.verdicts == {"ok": True}
