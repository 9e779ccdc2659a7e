from functools import reduce
from operator import xor

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.sequence_forge import (
    BitSource,
    SymbolSequence,
    boundary_points,
    load_sequence,
    make_sequence,
    phi_boundaries,
    phi_references,
    prime,
    primes,
    read_header,
    valuation,
    write_sequence,
)
from src.sequence_forge.boundaries import is_marker, parity_interval
from src.sequence_forge.primes import valuations
from src.shared.errors import IndexOverflowError, ZeroArgumentError


def test_prime_table_starts_at_one() -> None:
    assert [prime(k) for k in range(5)] == [1, 2, 3, 5, 7]
    assert prime(10) == 29
    assert primes().first(5) == (2, 3, 5, 7, 11)
    assert len(primes(200)) > 200


def test_valuation() -> None:
    assert valuation(1, 48) == 4
    assert valuation(2, 48) == 1
    assert valuation(3, 48) == 0
    with pytest.raises(ZeroArgumentError):
        valuation(1, 0)
    with pytest.raises(ValueError):
        valuation(0, 12)


@given(st.lists(st.integers(1, 10**9), min_size=1, max_size=30), st.integers(1, 4))
def test_vectorized_valuations_match_scalar(values: list[int], k: int) -> None:
    assert valuations(k, np.array(values)).tolist() == [valuation(k, v) for v in values]


def test_phi_boundaries() -> None:
    assert [phi_boundaries(2, k) for k in range(5)] == [
        (2, 3),
        (18, 27),
        (162, 243),
        (1458, 2187),
        (13122, 19683),
    ]
    assert boundary_points(2, 300) == [2, 3, 18, 27, 162, 243]
    assert phi_boundaries(2, 19)[1] == 3**39
    with pytest.raises(IndexOverflowError):
        phi_boundaries(2, 20)


def test_overwritten_indices_below_thirty() -> None:
    overwritten = {n for n in range(31) if is_marker(2, n) or parity_interval(2, n) is not None}
    assert overwritten == {2, 3, 18, 21, 24, 27}
    assert phi_references(2, 24) == (8,)
    assert phi_references(2, 25) == ()


@pytest.mark.parametrize("h", [2, 3, 4])
def test_phi_sequence_structure(h: int) -> None:
    source = BitSource.seeded(5)
    phi = SymbolSequence.phi(source, h)
    raw = SymbolSequence.raw(source)
    dollar = phi.alphabet.dollar
    stop = phi_boundaries(h, 2)[1] + 10
    markers = set(boundary_points(h, stop))
    for n in range(stop):
        refs = phi_references(h, n)
        if n in markers:
            assert phi[n] == dollar
        elif refs:
            assert phi[n] == reduce(xor, (phi[r] for r in refs), 0)
        else:
            assert phi[n] == raw[n]


@pytest.mark.parametrize("h", [1, 2, 3])
def test_f_sequence_identity(h: int) -> None:
    source = BitSource.seeded(7)
    f = SymbolSequence.f(source, h)
    raw = SymbolSequence.raw(source)
    p = prime(h + 1)
    assert f[0] == 0
    for n in range(1, 5_000):
        q, r = divmod(n, p)
        if r:
            assert f[n] == raw[q * (p - 1) + r]
        else:
            assert f[n] == reduce(xor, (f[q * prime(k)] for k in range(1, h + 1)), 0)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(0, 50_000), min_size=1, max_size=10))
def test_access_order_does_not_change_symbols(indices: list[int]) -> None:
    lazy = SymbolSequence.phi(BitSource.seeded(11), 2)
    for i in indices:
        lazy[i]
    reference = SymbolSequence.phi(BitSource.seeded(11), 2).prefix(50_001)
    assert np.array_equal(lazy.prefix(50_001), reference)


def test_distinct_seeds_differ() -> None:
    a = SymbolSequence.raw(BitSource.seeded(1)).prefix(256)
    b = SymbolSequence.raw(BitSource.seeded(2)).prefix(256)
    assert not np.array_equal(a, b)


def test_file_backed_source(tmp_path) -> None:
    path = tmp_path / "bits.bin"
    path.write_bytes(bytes([0b10110100]))
    raw = SymbolSequence.raw(BitSource.from_file(path), block_bits=2)
    assert raw.prefix(4).tolist() == [2, 3, 1, 0]
    with pytest.raises(IndexOverflowError):
        raw[4]


@pytest.mark.parametrize(
    ("family", "h", "encoding"),
    [("raw", None, "packed-bits"), ("phi", 2, "bytes"), ("f", 2, "packed-bits")],
)
def test_sequence_files(tmp_path, family, h, encoding) -> None:
    sequence = make_sequence(family, h=h, block_bits=1, seed=3)
    body = tmp_path / f"{family}.bin"
    header = write_sequence(sequence, 1_001, body, seed=3)
    assert header.encoding == encoding
    assert read_header(body) == header
    loaded = load_sequence(body)
    assert loaded.family == family and loaded.h == h
    assert np.array_equal(loaded.prefix(1_001), sequence.prefix(1_001))
    with pytest.raises(IndexOverflowError):
        loaded[1_001]


def test_make_sequence_rejects_bad_parameters() -> None:
    with pytest.raises(ValueError):
        make_sequence("phi", h=None, block_bits=1, seed=0)
    with pytest.raises(ValueError):
        make_sequence("f", h=2, block_bits=2, seed=0)
    with pytest.raises(ValueError):
        make_sequence("phi", h=1, block_bits=1, seed=0)
