"""Counting space curve components from numerical slices x1 = t.

The real points of each slice are computed numerically and joined to the
points of the next slice by a greedy nearest matching, within a radius that
shrinks with the slice step.  Points left over when the slice count changes
are ends of branches that turn or meet between the two slices, and the close
ones are joined.  Points outside a box holding all special points are
dropped, which is harmless since a branch that leaves the box never returns.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np
import sympy as sp

from .grid import OracleInconclusive, _radius

S1, S2, S3 = sp.symbols("x1 x2 x3")
X, Y = sp.symbols("x y")


def _to_expr(g):
    out = sp.Integer(0)
    for e, c in g.terms.items():
        out += sp.Rational(int(c.numerator), int(c.denominator)) * S1**e[0] * S2**e[1] * S3**e[2]
    return out


class _Slicer:
    def __init__(self, system):
        g1, g2 = (_to_expr(g) for g in system)
        if not sp.degree(g1, S3) + sp.degree(g2, S3):
            raise ValueError("no equation involves x3")
        self.projs = []
        for v in (S3, S2):
            r = sp.resultant(g1, g2, v)
            if r == 0:
                raise ValueError("system is not one-dimensional")
            self.projs.append(sp.sqf_part(sp.expand(r)))
        self.proj = sp.Poly(self.projs[0], S1, S2)
        self.g = [sp.Poly(g, S1, S2, S3) for g in (g1, g2)]
        self.lift = self.g[0] if self.g[0].degree(S3) >= self.g[1].degree(S3) else self.g[1]
        self.other = self.g[1] if self.lift is self.g[0] else self.g[0]
        self._c2 = self._matrix(self.proj)
        self._c3 = self._matrix(self.lift)
        self._co = self._matrix(self.other)

    @staticmethod
    def _matrix(p):
        shape = [p.degree(v) + 1 for v in p.gens]
        m = np.zeros(shape)
        for e, c in p.terms():
            m[e] = float(c)
        return m

    def bound(self) -> float:
        """Half-width of a cube holding the special points of both projections."""
        b = Fraction(0)
        for e, v in zip(self.projs, (S2, S3)):
            e = e.subs({S1: X, v: Y})
            if e.free_symbols:
                b = max(b, _radius(e, X, Y), _radius(e, Y, X))
        return float(b * Fraction(5, 4) + 1)

    def points(self, t: float, b: float):
        c2 = np.polynomial.polynomial.polyval(t, self._c2)   # coefficients in x2
        rows = np.polynomial.polynomial.polyval(t, self._c3)
        out = []
        for y in _real_roots(c2):
            if abs(y) > b:
                continue
            c3 = np.polynomial.polynomial.polyval(y, rows)
            for z in _real_roots(np.atleast_1d(c3)):
                if abs(z) <= b and abs(np.polynomial.polynomial.polyval3d(t, y, z, self._co)) <= 1e-6 * b:
                    out.append((t, y, z))
        return _dedupe(out, 1e-7 * b)


def _real_roots(c):
    c = np.trim_zeros(np.asarray(c, dtype=float), "b")
    if len(c) < 2:
        return []
    r = np.roots(c[::-1])
    return sorted(float(v.real) for v in r if abs(v.imag) <= 1e-7 * (1 + abs(v)))


def _dedupe(pts, tol):
    out = []
    for p in pts:
        if all(max(abs(a - b) for a, b in zip(p, q)) > tol for q in out):
            out.append(p)
    return out


class _DSU:
    def __init__(self):
        self.parent = {}

    def find(self, a):
        self.parent.setdefault(a, a)
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _dist(p, q):
    return sum((a - b) ** 2 for a, b in zip(p, q))


def _greedy_pairs(cands):
    used_a, used_b, out = set(), set(), []
    for d, i, j in sorted(cands):
        if i not in used_a and j not in used_b:
            used_a.add(i)
            used_b.add(j)
            out.append((i, j))
    return out


def slice_count(system, resolution: int, slicer: _Slicer | None = None) -> int:
    s = slicer or _Slicer(system)
    b = s.bound()
    h = 2 * b / resolution
    ts = -b + h * (np.arange(resolution + 1) + 0.1234567)
    slices = [s.points(float(t), b) for t in ts]
    # a branch moves by at most about sqrt(2 R h) between slices, also next
    # to a turning point, with R a curvature radius of the order of b
    tau2 = 8 * b * h
    dsu = _DSU()
    for i, pts in enumerate(slices):
        for j in range(len(pts)):
            dsu.find((i, j))
    for i in range(len(slices) - 1):
        a, c = slices[i], slices[i + 1]
        cands = [(_dist(p, q), x, y) for x, p in enumerate(a) for y, q in enumerate(c)]
        pairs = _greedy_pairs([t for t in cands if t[0] <= tau2])
        for x, y in pairs:
            dsu.union((i, x), (i + 1, y))
        for side, pts, k in ((set(range(len(a))) - {x for x, _ in pairs}, a, i),
                             (set(range(len(c))) - {y for _, y in pairs}, c, i + 1)):
            left = sorted(side)
            # ends that vanish together converge like sqrt(h); several of them
            # at once mean a real singular point, where all are joined
            for x in left:
                for y in left:
                    if x < y and _dist(pts[x], pts[y]) <= tau2:
                        dsu.union((k, x), (k, y))
    return len({dsu.find(k) for k in list(dsu.parent)})


def sampled_components_space(system, resolution: int = 1024, doublings: int = 3) -> int:
    """Component count of V(g1, g2) stable under one doubling of the slice count."""
    slicer = _Slicer(system)
    prev = slice_count(system, resolution, slicer)
    seen = [prev]
    for _ in range(doublings):
        resolution *= 2
        cur = slice_count(system, resolution, slicer)
        seen.append(cur)
        if cur == prev:
            return cur
        prev = cur
    raise OracleInconclusive(f"counts {seen} never stabilised")
