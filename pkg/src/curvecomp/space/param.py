"""Parametrizations of finite point sets and of space curves in R^3.

A space curve V(h1, h2) in generic coordinates is encoded by the square-free
plane curve w(y1, y2) = 0 (its projection) together with the first and
second signed subresultants of h1, h2 in y3.  Off the apparent
singularities, y3 = -S10 / S11 on the curve.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..arith.mpoly import MPoly
from ..arith.rational import ONE, qstr
from ..arith.subres import bivariate_gcd, bivariate_squarefree, resultant_last, signed_subresultants
from ..arith.upoly import UPoly
from ..roots.algebraic import isolate_squarefree
from ..roots.points import ExactPoint


class DimensionError(ValueError):
    """The input system does not define a curve (wrong dimension, or not reduced)."""


class ChartFailure(RuntimeError):
    """The current change of coordinates violates a genericity property."""

    def __init__(self, prop: str, detail: str = ""):
        super().__init__(f"{prop}: {detail}" if detail else prop)
        self.prop = prop


@dataclass
class ZeroDimParam:
    """Points (v_1/w', ..., v_n/w')(theta) over the real roots theta of w."""

    w: UPoly
    v: list
    lam: tuple = ()

    def points(self):
        dw = self.w.deriv()
        return [ExactPoint(t, list(self.v), dw) for t in isolate_squarefree(self.w)]

    def to_json(self):
        return {"w": self.w.to_str("t"), "v": [p.to_str("t") for p in self.v],
                "lambda": [qstr(c) for c in self.lam]}


@dataclass
class OneDimParam:
    """Curve data in chart coordinates y = A^{-1} x."""

    w: MPoly                 # square-free projection to (y1, y2)
    s1: tuple                # (S10, S11): y3 = -S10/S11 where S11 != 0
    s2: tuple | None         # (S20, S21, S22), or None when a fiber has at most one common root
    h: tuple                 # the system in chart coordinates

    def y3(self):
        return -self.s1[0], self.s1[1]

    def to_json(self):
        names = ["x1", "x2"]
        out = {"lambda": "x1", "mu": "x2", "w": self.w.to_str(names),
               "v3": {"num": (-self.s1[0]).to_str(names), "den": self.s1[1].to_str(names)}}
        return out


def _lc_const(p: MPoly, i: int):
    cs = p.coeffs_in(i)
    if not cs:
        return None
    top = cs[-1]
    return top.const_value() if top.is_const() else None


def one_dim_param(h1: MPoly, h2: MPoly) -> OneDimParam:
    """Projection and x3-recovery data for V(h1, h2) in R^3."""
    if h1.n != 3 or h2.n != 3:
        raise DimensionError("space curves need exactly three variables")
    d1, d2 = h1.degree(2), h2.degree(2)
    if d1 < 1 and d2 < 1:
        raise ChartFailure("generic coordinates", "neither equation involves x3")
    p, q = (h1, h2) if d1 >= d2 else (h2, h1)
    lp = _lc_const(p, 2)
    if lp is None:
        raise ChartFailure("generic coordinates", "leading coefficient in x3 is not constant")
    if q.degree(2) == p.degree(2):
        lq = _lc_const(q, 2)
        if lq is None:
            raise ChartFailure("generic coordinates", "leading coefficient in x3 is not constant")
        q = q * lp - p * lq
    if not q:
        raise DimensionError("equations are dependent")
    r = resultant_last(p, q) if q.degree(2) >= 1 else None
    if q.degree(2) < 1:
        # q is free of x3: the curve is V(q) x R intersected with p
        raise ChartFailure("generic coordinates", "an equation is free of x3 after reduction")
    if not r:
        raise DimensionError("resultant vanishes identically: the system is not one-dimensional")
    if r.is_const():
        w = MPoly.const(2, 1)
    else:
        w = bivariate_squarefree(r)
    zero = MPoly(2)
    one = MPoly.const(2, ONE)
    sres = signed_subresultants(p.coeffs_in(2), q.coeffs_in(2), zero, one)
    s10, s11 = sres[1][0], sres[1][1]
    s2 = tuple(sres[2]) if 2 in sres else None
    if not w.is_const():
        g = bivariate_gcd(w, s11)
        if not g.is_const():
            raise ChartFailure("generic coordinates", "x3 is not a function on a component of the projection")
    return OneDimParam(w, (s10, s11), s2, (h1, h2))
