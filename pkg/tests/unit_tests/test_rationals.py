from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.shared.rationals import format_float, format_rational, parse_rational


def test_parse_rational_forms() -> None:
    assert parse_rational("1/64") == Fraction(1, 64)
    assert parse_rational(" 3 / 9 ") == Fraction(1, 3)
    assert parse_rational("5") == Fraction(5)
    assert parse_rational(2) == Fraction(2)


@pytest.mark.parametrize("text", ["0.5", "1/0", "", "a/b", "1e-3"])
def test_parse_rational_rejects_inexact(text: str) -> None:
    with pytest.raises(ValueError):
        parse_rational(text)


@given(st.fractions())
def test_format_then_parse_is_identity(value: Fraction) -> None:
    assert parse_rational(format_rational(value)) == value


def test_format_float_is_fixed_precision() -> None:
    assert format_float(0.5) == "0.500000000000"
    assert format_float(float("-inf")) == "-inf"
