"""Exact integer/rational helpers shared by every delay formula.

Rationals are plain :class:`fractions.Fraction` values; subsets of users are
tuples of 1-based ranks in ascending order.
"""
from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from itertools import combinations
from typing import Tuple, Union

Rational = Fraction
SubsetId = Tuple[int, ...]

RationalLike = Union[Fraction, int, str]

DECIMAL_DIGITS = 12


def binom(n: int, k: int) -> int:
    """C(n, k) with the convention C(n, k) = 0 for k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binom requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def ksubsets(K: int, size: int) -> list[SubsetId]:
    """All `size`-subsets of [1..K], lexicographic."""
    if not 0 <= size <= K:
        raise ValueError(f"subset size {size} outside [0, {K}]")
    return list(combinations(range(1, K + 1), size))


def pascal_check(n: int, k: int) -> bool:
    return binom(n, k) == binom(n - 1, k) + binom(n - 1, k - 1)


def as_rational(value: RationalLike) -> Fraction:
    """Exact conversion of "num/den", decimal strings and ints.

    Floats are refused: they would smuggle binary rounding into exact
    comparisons.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}; pass a string")
    if isinstance(value, str):
        value = value.strip()
    return Fraction(value)


def fmt_rational(q: Fraction) -> str:
    """Render as reduced "num/den" (integers keep the "/1")."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def fmt_decimal(q: Union[Fraction, float], digits: int = DECIMAL_DIGITS) -> str:
    """Exactly `digits` significant digits, round-half-even, no exponent."""
    q = Fraction(q)
    if q == 0:
        return "0." + "0" * (digits - 1)
    sign = "-" if q < 0 else ""
    q = abs(q)
    e = len(str(q.numerator // q.denominator)) - 1 if q >= 1 else -1
    while q < Fraction(1, 10) ** (-e):  # only for q < 1
        e -= 1
    n = round(q * Fraction(10) ** (digits - 1 - e))  # Fraction.__round__ is half-even
    if n == 10**digits:
        e += 1
        n = round(q * Fraction(10) ** (digits - 1 - e))
    return sign + format(Decimal(n).scaleb(e - digits + 1), "f")
