"""Exact rational helpers: parsing and the ``"a/b"`` wire format."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str]


def to_fraction(value: RationalLike) -> Fraction:
    """Parse ints, Fractions and strings such as ``"2/3"`` or ``"-1"``.

    Floats are rejected on purpose: nothing in the math core may depend
    on binary floating point.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def fmt(value: RationalLike) -> str:
    """Lowest-terms ``"a/b"`` string; integers are written ``"a/1"``."""
    q = to_fraction(value)
    return f"{q.numerator}/{q.denominator}"
