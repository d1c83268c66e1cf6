"""Exact rationals.

All coefficient arithmetic goes through ``Q`` (gmpy2's ``mpq``), which keeps
values in lowest terms with a positive denominator.
"""
from __future__ import annotations

from fractions import Fraction

import gmpy2

Q = gmpy2.mpq
ZERO = Q(0)
ONE = Q(1)


def to_q(value) -> "gmpy2.mpq":
    """Convert ints, Fractions, strings like ``"3/4"`` and mpq to ``Q``."""
    if isinstance(value, type(ZERO)):
        return value
    if isinstance(value, Fraction):
        return Q(value.numerator, value.denominator)
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals")
    if isinstance(value, str):
        value = value.strip()
        if "/" in value:
            num, den = value.split("/", 1)
            return Q(int(num), int(den))
        return Q(int(value))
    return Q(value)


def qstr(value) -> str:
    """Canonical text form: ``"p"`` or ``"p/q"``."""
    value = to_q(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def bit_size(value) -> int:
    value = to_q(value)
    return max(int(gmpy2.bit_length(value.numerator)), int(gmpy2.bit_length(value.denominator)))


def simple_between(lo, hi):
    """A rational of small bit size strictly inside the open interval (lo, hi)."""
    lo, hi = to_q(lo), to_q(hi)
    if not lo < hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return ZERO
    first = Q(gmpy2.floor(lo) + 1)
    last = Q(gmpy2.ceil(hi) - 1)
    if first <= last:
        return first if lo >= 0 else last
    den = 2
    while True:
        c = Q(gmpy2.floor(lo * den) + 1, den)
        if c < hi:
            return c
        den *= 2
