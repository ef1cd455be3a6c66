"""Exact rational exponent arithmetic with an infinity sentinel.

Threshold formulas are evaluated in fractions.Fraction whenever the
inputs are rational so the worked examples reproduce exactly; math.inf
passes through as the p = infinity sentinel.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

Exact = Fraction | float  # Fraction when finite and exact, float otherwise

INF = math.inf


def is_inf(x) -> bool:
    return x == math.inf


def exact(x) -> Exact:
    """Fraction for exactly-representable finite inputs, inf passthrough."""
    if x == math.inf:
        return math.inf
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(x)


def as_float(x) -> float:
    if x == math.inf:
        return math.inf
    return float(x)


def fmt(x) -> str:
    """Serialize: "num/den" for Fractions, "inf", or a float repr."""
    if x is None:
        return "none"
    if x == math.inf:
        return "inf"
    if isinstance(x, Rational):
        f = Fraction(x)
        return f"{f.numerator}/{f.denominator}"
    return repr(float(x))


def parse(s: str) -> Exact | None:
    s = s.strip()
    if s == "none":
        return None
    if s in ("inf", "infinity"):
        return math.inf
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    if "." in s or "e" in s or "E" in s:
        return Fraction(float(s))
    return Fraction(int(s))
