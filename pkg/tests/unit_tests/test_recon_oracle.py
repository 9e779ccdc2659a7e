from functools import reduce
from operator import xor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.recon_oracle import (
    SCENARIOS,
    build_model,
    deducible_closure,
    dependency_node,
    leaf_expansion,
    parents,
    reconstruction_roundtrip,
    window_sets,
    window_start,
)
from src.sequence_forge import BitSource, SymbolSequence
from src.structure_lab import IndexSet

F_SEQUENCE = SymbolSequence.f(BitSource.seeded(21), 2)
PHI_SEQUENCE = SymbolSequence.phi(BitSource.seeded(21), 2)


def test_parents() -> None:
    assert parents("f", 2, 300) == (120, 180)
    assert parents("f", 2, 301) == ()
    assert parents("f", 1, 9) == (6,)
    assert parents("phi", 2, 24) == (8,)
    assert parents("phi", 3, 800) == (200, 600)
    assert parents("phi", 2, 25) == ()
    assert dependency_node("f", 2, 300).parents == (120, 180)
    with pytest.raises(ValueError):
        parents("f", 2, -1)


def test_leaf_expansion_cancels_pairs() -> None:
    assert leaf_expansion("f", 2, 300, 0).leaves == {300}
    assert leaf_expansion("f", 2, 300, 1).leaves == {120, 180}
    assert leaf_expansion("f", 2, 300, 2).leaves == {48, 108}
    assert leaf_expansion("f", 2, 301, 3).leaves == {301}
    with pytest.raises(ValueError):
        leaf_expansion("f", 2, 0, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 20_000), st.integers(0, 6))
def test_leaves_xor_to_the_root(root: int, depth: int) -> None:
    for sequence, family in ((F_SEQUENCE, "f"), (PHI_SEQUENCE, "phi")):
        leaves = leaf_expansion(family, 2, root, depth).leaves
        assert reduce(xor, (sequence[i] for i in leaves), 0) == sequence[root]


def test_window_sets() -> None:
    assert window_start(2100) == 1890
    v, w = window_sets(2, 20, 26)
    assert list(v) == [7, 8]
    assert w == IndexSet.span(0, 20) - v
    v2, _ = window_sets(2, 20, 26, multiplier=2)
    assert list(v2) == [14, 16]


def test_deducible_closure() -> None:
    forward, _ = deducible_closure("f", 2, IndexSet.from_points([120, 180]), 300, allow_inversion=False)
    assert list(forward) == [0, 120, 180, 300]
    inverted, _ = deducible_closure("f", 2, IndexSet.from_points([120, 300]), 300)
    assert 180 in inverted
    blocked, _ = deducible_closure("f", 2, IndexSet.from_points([120, 300]), 300, allow_inversion=False)
    assert 180 not in blocked
    _, base = deducible_closure("f", 2, IndexSet.span(1, 4), 300)
    assert list(base) == [1, 2, 3, 4]


def test_dependency_model_links() -> None:
    model = build_model("phi", 2, 30)
    assert set(model.structural) == {2, 3, 18, 27}
    assert 21 not in model.link_x.tolist() and 20 in model.link_x.tolist()
    assert (21, (7,)) in model.equations


@pytest.mark.parametrize("scenario", SCENARIOS)
def test_phi_scenarios_reconstruct(scenario) -> None:
    report = reconstruction_roundtrip(scenario, family="phi", h=2, n=2100, m=1600, seed=3)
    assert report.passed, (report.missing[:5], report.mismatched[:5])
    assert report.m == 1600


def test_f_restore() -> None:
    report = reconstruction_roundtrip("restore", family="f", h=2, n=2000, seed=3)
    assert report.passed
    assert report.m == window_start(2000)


def test_f_has_no_window_scenario() -> None:
    with pytest.raises(ValueError):
        reconstruction_roundtrip("window", family="f", h=2, n=100)


def test_mutation_is_detected() -> None:
    report = reconstruction_roundtrip("window", family="phi", h=2, n=2100, m=1600, mutate=True)
    assert not report.passed
    assert report.erased == [1]
    assert 1 in report.missing


def test_split_mutation_erases_a_base_index() -> None:
    report = reconstruction_roundtrip("split", family="phi", h=2, n=2100, m=1600, mutate=True)
    assert not report.passed
    assert report.erased == []
    assert report.erased_r == [1]
    assert 1 in report.missing


def test_explicit_base_erasure_inside_the_window_is_caught() -> None:
    report = reconstruction_roundtrip("split", family="phi", h=2, n=2100, m=1600, erase_r=[1])
    assert not report.passed
    assert report.erased_r == [1]


def test_explicit_erasure_of_a_recoverable_index() -> None:
    # 21 is a parity index whose parent 7 stays revealed
    report = reconstruction_roundtrip("window", family="phi", h=2, n=2100, m=1600, erase=[21])
    assert report.passed
    assert report.erased == [21]
