"""Projection, lifting and connection for a plane curve in generic coordinates."""
from __future__ import annotations

import gmpy2

from ..arith.mpoly import MPoly
from ..arith.rational import ONE, Q, simple_between
from ..arith.subres import resultant_x2
from ..arith.upoly import UPoly, poly_gcd, squarefree_part
from ..roots.algebraic import RealAlgebraicNumber, between, isolate_squarefree, root_bound
from ..roots.fiber import FiberData, fiber_points
from .graph import PlanarGraph


class TopologyError(RuntimeError):
    pass


class ShearRequest(TopologyError):
    """The curve is not in generic coordinates; a shear x1 -> x1 + s*x2 should be applied."""


def derivative_resultants(f: MPoly):
    """[w_1, ..., w_d] with w_k = Res_x2(f, d^k f / dx2^k)."""
    d = f.degree(1)
    out = []
    g = f
    for _ in range(d):
        g = g.deriv(1)
        out.append(resultant_x2(f, g))
    return out


def _certainly_rational_avoid(r, polys, points) -> bool:
    if any(p.degree >= 1 and p(r) == 0 for p in polys):
        return False
    return all(x.compare_rational(r) != 0 for x in points)


def _pick(lo, hi, polys, points):
    """A simple rational in (lo, hi) that is not a root of ``polys`` nor one of ``points``."""
    c = simple_between(lo, hi)
    while not _certainly_rational_avoid(c, polys, points):
        if hi - c > c - lo:
            lo = c
        else:
            hi = c
        c = simple_between(lo, hi)
    return c


def special_bound(polys, points=()):
    """Integer B with every real root of ``polys`` and every point in (-B, B)."""
    b = ONE
    for p in polys:
        if p.degree >= 1:
            b = max(b, root_bound(p))
    for x in points:
        b = max(b, abs(x.lo) + 1, abs(x.hi) + 1)
    return Q(int(gmpy2.ceil(b)))


def projection_phase(f: MPoly, extra_polys=(), extra_points=(), avoid_points=True):
    """Critical abscissae (roots of w_1) and interleaving rational abscissae.

    ``extra_polys`` / ``extra_points`` are further special abscissae that the
    outer columns must enclose.  The rational columns avoid the roots of
    ``extra_polys`` always and ``extra_points`` only when ``avoid_points``.
    """
    if f.degree(1) < 1:
        raise TopologyError("curve has degree 0 in x2")
    w1 = resultant_x2(f, f.deriv(1))
    if not w1:
        raise TopologyError("Res(f, df/dx2) vanishes identically; f is not square-free")
    m = squarefree_part(w1) if w1.degree >= 1 else UPoly.const(1)
    alphas = isolate_squarefree(m)
    polys = [m] + [squarefree_part(p) for p in extra_polys if p and p.degree >= 1]
    bound = special_bound(polys, extra_points)
    avoid = polys[1:]
    avoid_pts = extra_points if avoid_points else ()
    if not alphas:
        has_extra = bool(extra_points) or any(isolate_squarefree(p) for p in avoid)
        betas = [-(bound + 1), bound + 1] if has_extra else [_pick(-bound - 1, bound + 1, avoid, avoid_pts)]
        return alphas, betas
    betas = [-(bound + 1)]
    for a, b in zip(alphas, alphas[1:]):
        between(a, b)
        betas.append(_pick(a.hi, b.lo, avoid, avoid_pts))
    betas.append(bound + 1)
    return alphas, betas


def _connect_critical(g: PlanarGraph, left, crit, right):
    pts = crit.vertices
    multi = [i for i, vid in enumerate(pts) if g.vertices[vid].point.mult > 1]
    if len(multi) != 1:
        raise ShearRequest(f"critical fiber with {len(multi)} multiple roots")
    s = multi[0]
    a, b = s, len(pts) - s - 1
    for side in (left, right):
        n = len(side.vertices)
        mid = n - a - b
        if mid < 0:
            raise TopologyError("fiber counts are inconsistent with the critical fiber")
        for j, vid in enumerate(side.vertices):
            if j < a:
                target = pts[j]
            elif j < a + mid:
                target = pts[s]
            else:
                target = pts[s + 1 + (j - a - mid)]
            if side is left:
                g.add_edge(vid, target)
            else:
                g.add_edge(target, vid)


def lift_and_connect(f: MPoly, alphas, betas) -> PlanarGraph:
    """Graph isotopic to the real curve, built column by column."""
    g = PlanarGraph(f)
    data = FiberData(f)
    cols = []
    for i, beta in enumerate(betas):
        x = RealAlgebraicNumber.rational(beta)
        cols.append(g.add_column(x, "intermediate", fiber_points(f, x)))
        if i < len(alphas):
            pts = fiber_points(f, alphas[i], data)
            col = g.add_column(alphas[i], "critical", pts)
            for vid in col.vertices:
                if g.vertices[vid].point.mult > 1:
                    g.vertices[vid].tags.add("K")
            cols.append(col)
    for i, col in enumerate(cols):
        if col.kind == "critical":
            _connect_critical(g, cols[i - 1], col, cols[i + 1])
    for i in range(len(cols) - 1):
        if cols[i].kind == "intermediate" and cols[i + 1].kind == "intermediate":
            a, b = cols[i].vertices, cols[i + 1].vertices
            if len(a) != len(b):
                raise TopologyError("regular fibers of different sizes without a critical value between")
            for u, v in zip(a, b):
                g.add_edge(u, v)
    for vid in g.columns[0].vertices:
        g.tails.add((vid, "left"))
    for vid in g.columns[-1].vertices:
        g.tails.add((vid, "right"))
    return g


def update_edges(new_points, g: PlanarGraph, kind: str = "svalue", x=None):
    """Insert one column of new vertices, subdividing the edges of its strip.

    All ``new_points`` share the abscissa ``x`` (taken from the first point when
    omitted), which must lie strictly between two existing columns.
    """
    if not new_points and x is None:
        return g
    if x is None:
        x = new_points[0].x
    i, exact = g.locate_column(x)
    if exact:
        raise TopologyError("new vertex collides with an existing column")
    if i < 0 or i >= len(g.columns) - 1:
        raise TopologyError("new vertex lies outside the outer columns")
    strip = g.strip_edges(i)
    if len(strip) != len(new_points):
        raise TopologyError(
            f"fiber over the new abscissa has {len(new_points)} points but the strip has {len(strip)} edges"
        )
    col = g.add_column(x, kind, new_points, index=i + 1)
    for (u, v), w in zip(strip, col.vertices):
        g.edges.remove((u, v))
        g.add_edge(u, w)
        g.add_edge(w, v)
    return g


def s_values(f: MPoly, ws=None):
    """Abscissae of S(f) not already critical: [(k, RealAlgebraicNumber)], sorted.

    Uses the cascade wbar_k = sqf(w_k) / gcd(sqf(w_k), sqf(w_1 ... w_{k-1})).
    """
    from ..roots.algebraic import separate_families
    if ws is None:
        ws = derivative_resultants(f)
    wbars = wbar_family(ws)
    polys = [p for _, p in wbars]
    fams = separate_families(polys) if polys else []
    out = []
    for (k, _), fam in zip(wbars, fams):
        out.extend((k, r) for r in fam)
    out.sort(key=lambda kr: kr[1].lo)
    return out


def wbar_family(ws):
    """[(k, wbar_k)] for k >= 2 with nonconstant wbar_k; families are pairwise coprime."""
    if not ws:
        return []
    running = squarefree_part(ws[0]) if ws[0].degree >= 1 else UPoly.const(1)
    out = []
    for k, w in enumerate(ws[1:], start=2):
        if w.degree >= 1:
            sq = squarefree_part(w)
            wb = sq.exquo(poly_gcd(sq, running))
            if wb.degree >= 1:
                out.append((k, wb.monic()))
            running = squarefree_part(running * sq)
    return out
