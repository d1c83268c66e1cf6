"""Shared strategies and sympy conversions for the test suite."""
from __future__ import annotations

import sympy as sp
from hypothesis import strategies as st

from curvecomp.arith.mpoly import MPoly
from curvecomp.arith.upoly import UPoly

T = sp.Symbol("t")
XS = sp.symbols("x1:4")


def up_sympy(p: UPoly) -> sp.Poly:
    return sp.Poly([sp.Rational(str(c)) for c in reversed(p.c)] or [0], T)


def mp_sympy(p: MPoly) -> sp.Expr:
    out = sp.Integer(0)
    for e, c in p.terms.items():
        term = sp.Rational(str(c))
        for v, k in zip(XS, e):
            term *= v ** k
        out += term
    return out


def sympy_mp(expr, n: int) -> MPoly:
    poly = sp.Poly(sp.expand(expr), *XS[:n])
    return MPoly(n, {m: str(c) for m, c in poly.terms()})


small_int = st.integers(-6, 6)


@st.composite
def upolys(draw, max_degree=6, allow_zero=False):
    coeffs = draw(st.lists(small_int, min_size=1, max_size=max_degree + 1))
    if draw(st.booleans()):
        # plant repeated and rational roots now and then
        roots = draw(st.lists(st.integers(-3, 3), max_size=3))
        p = UPoly(coeffs or [1])
        for r in roots:
            p = p * UPoly((-r, 1))
        coeffs = list(p.c)
    p = UPoly(coeffs)
    if not allow_zero and p.is_zero():
        p = UPoly((1,))
    return p


@st.composite
def bivariate(draw, max_degree=3):
    terms = {}
    for i in range(max_degree + 1):
        for j in range(max_degree + 1 - i):
            c = draw(st.integers(-4, 4))
            if c:
                terms[(i, j)] = c
    p = MPoly(2, terms)
    if p.is_zero():
        p = MPoly(2, {(0, 1): 1})
    return p


rationals = st.fractions(min_value=-8, max_value=8, max_denominator=12)
