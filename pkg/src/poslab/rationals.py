"""Exact rational helpers: parsing, formatting, square roots, small combinatorics.

All quantities that carry mathematical meaning in this package are
``fractions.Fraction`` values.  Floats are deliberately rejected by the
parsers: a float argument is almost always a silent loss of exactness.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

Rational = Fraction


def rat(value) -> Fraction:
    """Coerce ``value`` to an exact Fraction.

    Accepts int, Fraction, and strings: ``"p/q"``, ``"p"``, or an exact
    decimal literal like ``"0.3"`` (which is 3/10, exactly).  Float values
    are rejected: a binary double has already lost exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational string: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError(
            f"floats are not exact; pass a rational string like '3/10' instead of {value!r}"
        )
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def rat_str(value: Fraction) -> str:
    """Render a Fraction as the canonical ``"p/q"`` wire string."""
    q = rat(value)
    return f"{q.numerator}/{q.denominator}"


def rational_sqrt(value: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if it is irrational."""
    q = rat(value)
    if q < 0:
        return None
    rn = isqrt(q.numerator)
    rd = isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def double_factorial(n: int) -> int:
    """n!! for n >= -1 (empty product convention: (-1)!! = 0!! = 1)."""
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def fibonacci(count: int) -> list[int]:
    """First ``count`` Fibonacci numbers starting 1, 1, 2, 3, 5, ...

    This is the positive branch (no leading zero), i.e. entry ``n`` holds
    the (n+1)-st member of the classical 0, 1, 1, 2, ... chain.
    """
    out: list[int] = []
    a, b = 1, 1
    for _ in range(count):
        out.append(a)
        a, b = b, a + b
    return out
