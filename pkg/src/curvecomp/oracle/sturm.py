"""Root counting with a classical Sturm chain, computed by sympy."""
from __future__ import annotations

from fractions import Fraction

import sympy as sp

T = sp.Symbol("t")


def as_sympy_poly(p) -> sp.Poly:
    """A univariate polynomial from a UPoly, a coefficient list (low first) or a sympy object."""
    if isinstance(p, sp.Poly):
        return sp.Poly(p.as_expr(), *p.gens)
    if isinstance(p, sp.Expr):
        free = sorted(p.free_symbols, key=str)
        return sp.Poly(p, *(free or [T]))
    coeffs = getattr(p, "c", p)
    return sp.Poly(list(reversed([sp.Rational(str(c)) for c in coeffs])) or [0], T)


def _variations(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _at(chain, x):
    return [c.eval(sp.Rational(str(x))) for c in chain]


def _at_infinity(chain, positive: bool):
    out = []
    for c in chain:
        s = 1 if c.LC() > 0 else -1
        if not positive and c.degree() % 2:
            s = -s
        out.append(s)
    return out


def sturm_count(p, interval) -> int:
    """Number of distinct real roots of p in the open interval (a, b).

    Either end may be None for an infinite end.  A root at a finite end is an
    error: the caller is expected to move the end.
    """
    poly = as_sympy_poly(p)
    a, b = interval
    if poly.degree() < 1:
        if poly.is_zero:
            raise ValueError("zero polynomial")
        return 0
    for e in (a, b):
        if e is not None and poly.eval(sp.Rational(str(e))) == 0:
            raise ValueError(f"interval end {e} is a root")
    chain = sp.sturm(poly)
    va = _variations(_at_infinity(chain, False) if a is None else _at(chain, Fraction(a)))
    vb = _variations(_at_infinity(chain, True) if b is None else _at(chain, Fraction(b)))
    return va - vb
