"""Exact rational parsing and formatting.

Rationals in spec files, configuration and reports are always written as
``num/den`` (or a bare integer) and never pass through floating point.
"""

import re
from fractions import Fraction
from typing import Union

_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse ``num/den`` or an integer literal into a Fraction.

    Decimal notation is rejected so that no value is ever rounded.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    match = _RATIONAL.match(text)
    if match is None:
        raise ValueError(f"not an exact rational (expected num/den): {text!r}")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ValueError(f"zero denominator in rational: {text!r}")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value: Fraction) -> str:
    """Format a Fraction as ``num/den`` (``num`` when the denominator is 1)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_float(value: float, digits: int = 12) -> str:
    """Format a float with a fixed number of decimals; infinities stay readable."""
    if value == float("inf"):
        return "inf"
    if value == float("-inf"):
        return "-inf"
    return f"{value:.{digits}f}"
