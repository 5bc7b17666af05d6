"""Exact rational handling for threshold comparisons.

Degree thresholds like (1+alpha)k/2 are compared exactly, never through
floats.  Callers may pass Fraction, int, str, or float; floats go through
their shortest decimal repr, so 0.3 means 3/10 and not its binary neighbor.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str, float]


def as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")
