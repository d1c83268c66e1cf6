"""Independent checks on plane isotopy graphs, shared by unit and acceptance tests.

Each check returns a list of violations (empty when the property holds), so
callers can both assert and report counts.
"""
from __future__ import annotations

import random

import mpmath
import sympy as sp

from curvecomp.arith.mpoly import MPoly
from curvecomp.arith.rational import Q
from curvecomp.arith.upoly import UPoly
from curvecomp.roots.algebraic import RealAlgebraicNumber
from curvecomp.roots.fiber import fiber_points
from curvecomp.roots.points import ExactPoint
from curvecomp.sa.signs import _locate, derivative_polys, graph_keys, tail_key
from helpers import XS, mp_sympy

mpmath.mp.dps = 50


# -- sampling along edges --------------------------------------------------------

def _gap(a: RealAlgebraicNumber, b: RealAlgebraicNumber):
    a, b = a.copy(), b.copy()
    while not a.hi < b.lo:
        (a if a.width() >= b.width() else b)._halve()
    return a.hi, b.lo


def slab_abscissae(graph, i, n=3):
    """n rationals strictly inside slab i (between columns i and i+1; -1 and len-1 are the ends)."""
    cols = graph.columns
    if i < 0:
        x0 = cols[0].x.lo - 1
        return [x0 - j for j in range(n)]
    if i >= len(cols) - 1:
        x0 = cols[-1].x.hi + 1
        return [x0 + j for j in range(n)]
    lo, hi = _gap(cols[i].x, cols[i + 1].x)
    return [lo + (hi - lo) * Q(j, n + 1) for j in range(1, n + 1)]


def slab_keys(graph, i):
    """Edge or tail keys crossing slab i, bottom to top."""
    if i < 0:
        return [tail_key(v, "left") for v in graph.tails_at("left")]
    if i >= len(graph.columns) - 1:
        return [tail_key(v, "right") for v in graph.tails_at("right")]
    return graph.strip_edges(i)


def slab_points(f: MPoly, t):
    return fiber_points(f, RealAlgebraicNumber.rational(t))


def exact_point(t, plane_point, shear=Q(0)):
    """The fiber point (t, y) as an ExactPoint, mapped back through the shear u = x1 - s x2."""
    y = plane_point.yr.copy()
    return ExactPoint(y, [UPoly((t, shear)), UPoly((0, 1))])


def slabs(graph):
    return range(-1, len(graph.columns))


# -- checks ----------------------------------------------------------------------

def sign_constancy_violations(part, n=3):
    g, f = part.graph, part.f
    ders = derivative_polys(f)
    bad = []
    if not g.columns:
        return bad
    for i in slabs(g):
        keys = slab_keys(g, i)
        for t in slab_abscissae(g, i, n):
            pts = slab_points(f, t)
            if len(pts) != len(keys):
                bad.append(("fiber size", i, t))
                continue
            for key, p in zip(keys, pts):
                sig = tuple(p.sign(d) if not d.is_const() else (1 if d.const_value() > 0 else -1) for d in ders)
                if tuple(part.sigma[key]) != sig:
                    bad.append((key, t, sig, tuple(part.sigma[key])))
    return bad


def thom_collisions(part):
    g = part.graph
    bad = []
    if not g.columns:
        return bad
    for i in slabs(g):
        sigs = [tuple(part.sigma[k]) for k in slab_keys(g, i)]
        if len(set(sigs)) != len(sigs):
            bad.append((i, sigs))
    return bad


def fiber_count_violations(graph_f, h, n=20, seed=7):
    """Vertical-line crossings of the graph against distinct real roots of the curve fiber."""
    rng = random.Random(seed)
    expr = mp_sympy(graph_f)
    bad = []
    for _ in range(n):
        r = Q(rng.randint(-4000, 4000), rng.choice([997, 991, 983]))
        want = sp.Poly(expr.subs(XS[0], sp.Rational(int(r.numerator), int(r.denominator))), XS[1])
        want = want.count_roots() if want.degree() > 0 else 0
        got = sum(p.graph.crossings_at(r) for p in h.parts)
        if got != want:
            bad.append((r, got, want))
    return bad


def vk_adjacency_violations(h):
    ks = sorted(h.dedup_class("K"))
    return [(a, b) for i, a in enumerate(ks) for b in ks[i + 1:] if h.adjacent(a, b)]


def critical_points(f: MPoly):
    """Real points of f = df/dx2 = 0 as floats, computed with sympy and mpmath."""
    e = mp_sympy(f)
    fy = sp.diff(e, XS[1])
    if sp.degree(e, XS[1]) < 1:
        return []
    res = sp.Poly(sp.resultant(e, fy, XS[1]), XS[0])
    out = []
    if res.is_zero or res.degree() < 1:
        return out
    for alpha, _ in sp.Poly(sp.sqf_part(res.as_expr()), XS[0]).real_roots(multiple=False):
        a = alpha.evalf(45)
        fib = sp.Poly(sp.expand(e.subs(XS[0], a)), XS[1])
        dfib = sp.Poly(sp.expand(fy.subs(XS[0], a)), XS[1])
        zs = mpmath.polyroots([mpmath.mpf(str(c)) for c in fib.all_coeffs()], maxsteps=500, extraprec=500)
        seen = []
        for z in zs:
            if abs(z.imag) > 1e-10:
                continue
            y = z.real
            if abs(mpmath.polyval([mpmath.mpf(str(c)) for c in dfib.all_coeffs()], y)) < 1e-12 and \
                    all(abs(y - s) > 1e-8 for s in seen):
                seen.append(y)
                out.append((float(a), float(y)))
    return out


def k_embedding_violations(part):
    g = part.graph
    ks = [v for v in g.vertices.values() if "K" in v.tags]
    boxes = []
    for v in ks:
        v.point.refine(Q(1, 1 << 30))
        (xl, xh), (yl, yh) = v.point.x_interval(), v.point.y_interval()
        boxes.append((float(xl), float(xh), float(yl), float(yh)))
    pts = critical_points(part.f)
    bad = []
    for x, y in pts:
        hits = [b for b in boxes if b[0] - 1e-8 <= x <= b[1] + 1e-8 and b[2] - 1e-8 <= y <= b[3] + 1e-8]
        if len(hits) != 1:
            bad.append(("unmatched", x, y, len(hits)))
    if len(pts) != len(ks):
        bad.append(("count", len(pts), len(ks)))
    return bad


def sign_sample_violations(part):
    """Every component of C minus (K and S_k) meets the samples, and s_k is nonzero there."""
    g = part.graph
    bad = []
    for k, samples in part.samples.items():
        removed = {vid for vid, v in g.vertices.items() if "K" in v.tags or f"S{k}" in v.tags}
        parent = {key: key for key in graph_keys(g)}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        incident = {vid: [] for vid in g.vertices}
        for e in g.edges:
            incident[e[0]].append(e)
            incident[e[1]].append(e)
        for v, s in g.tails:
            incident[v].append(tail_key(v, s))
        for vid, keys in incident.items():
            if vid in removed:
                continue
            for a in keys[1:]:
                ra, rb = find(a), find(keys[0])
                if ra != rb:
                    parent[ra] = rb
        hit = set()
        for s in samples:
            if s.sign == 0:
                bad.append(("zero sign", k, s.theta))
            key, _ = _locate(g, s)
            hit.add(find(key))
        roots = {find(key) for key in parent}
        # a vertex-free closed loop would be a component without keys; the graph has none
        for r in roots - hit:
            bad.append(("missed", k, r))
    return bad


def size_ratios(h, f: MPoly, n_points=0):
    d = f.total_degree()
    nv, ne = h.num_vertices(), h.num_edges()
    bv = d ** 4 + d * n_points
    be = d * (d ** 3 + n_points + 1)
    return nv, ne, nv / bv if bv else 0.0, ne / be if be else 0.0
