"""Counting plane curve components by sampling signs on a grid.

The curve is found as the union of grid cells whose corners disagree in
sign.  The box is chosen so that it holds every point with a horizontal or
vertical tangent, every singular point and every crossing with the two
diagonals; a component can then neither avoid the box nor leave it and come
back, so the clusters inside the box are in bijection with the components.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy as sp

from . import kernels

X, Y = sp.symbols("x y")


class OracleInconclusive(RuntimeError):
    """The sampled count changed under every tried refinement."""


@dataclass(frozen=True)
class GridSpec:
    box: tuple            # ((xlo, xhi), (ylo, yhi))
    resolution: int = 128
    tolerance: Fraction = Fraction(0)

    def __post_init__(self):
        if self.resolution < 1:
            raise ValueError("resolution must be positive")


def to_sympy(f) -> sp.Expr:
    """An MPoly in x1, x2 as a sympy expression in x, y."""
    out = sp.Integer(0)
    for (i, j), c in f.terms.items():
        out += sp.Rational(int(c.numerator), int(c.denominator)) * X**i * Y**j
    return out


def _real_root_radius(p: sp.Poly) -> Fraction:
    if p.degree() < 1:
        return Fraction(0)
    best = Fraction(0)
    for (a, b), _ in p.intervals():
        best = max(best, abs(Fraction(str(a))), abs(Fraction(str(b))))
    return best


def _radius(expr, var, other) -> Fraction:
    """Bound on |var| over the points of the special sets of expr = 0."""
    out = Fraction(0)
    for g, _ in sp.factor_list(expr)[1]:
        g = sp.Poly(g, X, Y)
        if g.degree(other) < 1:
            out = max(out, _real_root_radius(sp.Poly(g.as_expr(), var)))
            continue
        e = g.as_expr()
        lc = sp.Poly(e, other).LC()
        polys = [lc, sp.resultant(e, sp.diff(e, other), other)]
        polys += [sp.resultant(e, other - s * var, other) for s in (1, -1)]
        for r in polys:
            r = sp.Poly(r, var)
            if not r.is_zero:
                out = max(out, _real_root_radius(r))
    return out


def default_spec(f, resolution: int = 128) -> GridSpec:
    """GridSpec whose box holds all the special points of f = 0."""
    e = to_sympy(f)
    bx = _radius(e, X, Y)
    by = _radius(e, Y, X)
    b = max(bx, by) * Fraction(5, 4) + 1
    return GridSpec(((-b, b), (-b, b)), resolution)


def _coef_matrix(f) -> np.ndarray:
    dx = max((e[0] for e in f.terms), default=0) + 1
    dy = max((e[1] for e in f.terms), default=0) + 1
    coef = np.zeros((dx, dy))
    for (i, j), c in f.terms.items():
        coef[i, j] = float(c)
    return coef


def grid_count(f, spec: GridSpec) -> int:
    """Number of clusters of sign-change cells at the resolution of spec."""
    (xlo, xhi), (ylo, yhi) = spec.box
    n = spec.resolution
    # shifted by an irrational-looking fraction of a cell, so that grid lines
    # do not run through rational special points
    shift = 0.1234567
    hx = float(xhi - xlo) / n
    hy = float(yhi - ylo) / n
    xs = float(xlo) + hx * (np.arange(n + 1) + shift)
    ys = float(ylo) + hy * (np.arange(n + 1) + shift)
    vals = kernels.grid_values(_coef_matrix(f), xs, ys)
    return kernels.count_clusters(kernels.crossing_cells(vals))


def sampled_components_plane(f, spec: GridSpec | None = None, doublings: int = 3) -> int:
    """Component count stable under one doubling of the resolution."""
    if spec is None:
        spec = default_spec(f)
    n = spec.resolution
    prev = grid_count(f, spec)
    seen = [prev]
    for _ in range(doublings):
        n *= 2
        cur = grid_count(f, GridSpec(spec.box, n, spec.tolerance))
        seen.append(cur)
        if cur == prev:
            return cur
        prev = cur
    raise OracleInconclusive(f"counts {seen} never stabilised")
