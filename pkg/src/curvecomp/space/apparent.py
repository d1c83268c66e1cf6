"""Apparent singularities of a projected space curve and their resolution.

A singular point p of the projection w = 0 is apparent when two distinct
curve points lie above it, which shows up as the vanishing of S11 at p.  It is
a crossing (two real branches, valence 4) when the quadratic S2 has a
positive discriminant at p, and an isolated real point of w = 0 without real
preimage when the discriminant is negative.  A zero discriminant means a
single double point above p, a genuine singularity of the space curve.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..arith.mpoly import x2_coeffs
from ..arith.subres import resultant_x2
from ..arith.upoly import UPoly, poly_gcd, squarefree_part
from ..sa.signs import _DSU
from .param import ChartFailure, OneDimParam


@dataclass
class ApparentSingularitySet:
    q_app: UPoly
    crunodes: list = field(default_factory=list)   # representative vertex keys
    acnodes: list = field(default_factory=list)

    @property
    def keys(self):
        return set(self.crunodes) | set(self.acnodes)


def q_app_polynomial(param: OneDimParam) -> UPoly:
    """Polynomial whose real roots include the abscissae of the apparent singularities.

    gcd of sqf Res_y2(w, dw/dy2) with Res_y2(w, S11): abscissae of critical
    fibers that also meet the locus where y3 is not determined.
    """
    w = param.w
    if w.degree(1) < 1:
        return UPoly.const(1)
    w1 = resultant_x2(w, w.deriv(1))
    s11 = param.s1[1]
    if s11.is_const():
        return UPoly.const(1)
    r = resultant_x2(w, s11)
    if not r or w1.degree < 1:
        return UPoly.const(1)
    return poly_gcd(squarefree_part(w1), squarefree_part(r)) if r.degree >= 1 else UPoly.const(1)


def apparent_singularities(param: OneDimParam, h) -> ApparentSingularitySet:
    """Classify the singular vertices of the planar graph ``h`` of w = 0."""
    q = q_app_polynomial(param)
    out = ApparentSingularitySet(q)
    if q.degree < 1:
        return out
    s11 = param.s1[1]
    wx = param.w.deriv(0)
    rep = h.representatives()
    for key in sorted({rep[k] for k in h.classes["K"]}):
        v = h.vertex(key)
        if not v.x.vanishes(q):
            continue
        pt = v.point
        if pt.sign(wx) != 0 or pt.sign(s11) != 0:
            continue
        if param.s2 is None:
            raise ChartFailure("apparent nodes", "two curve points over one projected point but no quadratic subresultant")
        s20, s21, s22 = param.s2
        if pt.sign(s22) == 0:
            raise ChartFailure("apparent nodes", "more than two curve points over one projected point")
        disc = pt.sign(s21 * s21 - s22 * s20 * 4)
        if disc > 0:
            out.crunodes.append(key)
        elif disc < 0:
            out.acnodes.append(key)
        else:
            # one double point above: a true singularity of the space curve
            continue
        v.tags.add("app")
        h.classes["app"].add(key)
    return out


def node_pairs(h, key):
    """Split the four edges at a crossing into the two branches through it.

    Returns {(part, edge): branch index in {0, 1}}.
    """
    rep = h.representatives()
    ends = []
    for i, part in enumerate(h.parts):
        g = part.graph
        for e in g.edges:
            for side, vid in (("R", e[0]), ("L", e[1])):
                if rep[(i, vid)] == key:
                    # side "L": the edge arrives from the left
                    other = e[0] if side == "L" else e[1]
                    ends.append((i, e, side, g.vertices[other].rank))
    if len(ends) != 4:
        raise ChartFailure("valence", f"apparent node has valence {len(ends)}")
    left = [t for t in ends if t[2] == "L"]
    right = [t for t in ends if t[2] == "R"]
    if len(left) != 2 or len(right) != 2:
        raise ChartFailure("valence", "apparent node with a vertical branch")
    parts = {t[0] for t in ends}
    out = {}
    if len(parts) == 1:
        left.sort(key=lambda t: t[3])
        right.sort(key=lambda t: t[3])
        out[(left[0][0], left[0][1])] = 0
        out[(right[1][0], right[1][1])] = 0
        out[(left[1][0], left[1][1])] = 1
        out[(right[0][0], right[0][1])] = 1
    else:
        for b, p in enumerate(sorted(parts)):
            mine = [t for t in ends if t[0] == p]
            if len(mine) != 2:
                raise ChartFailure("valence", "crossing of factors is not transversal")
            for t in mine:
                out[(t[0], t[1])] = b
    return out


@dataclass
class Group:
    """A connected component of the real space curve, seen in one chart."""

    edges: list          # (part, edge)
    vertices: list       # representative vertex keys (crossings excluded)
    tails: list = field(default_factory=list)


def sa_node_resolution(h, app: ApparentSingularitySet):
    """Connected groups of the planar graph after separating the branches at crossings.

    Isolated apparent points have no real preimage and are dropped.
    """
    rep = h.representatives()
    branch = {}
    for key in app.crunodes:
        branch.update({(key, pe): b for pe, b in node_pairs(h, key).items()})
    dsu = _DSU()
    cross = set(app.crunodes)
    drop = set(app.acnodes)

    def end(i, vid, pe):
        r = rep[(i, vid)]
        if r in cross:
            return (r, branch[(r, pe)])
        return r

    for k in set(rep.values()):
        if k not in cross and k not in drop:
            dsu.find(k)
    edges = []
    for i, part in enumerate(h.parts):
        for e in part.graph.edges:
            pe = (i, e)
            a, b = end(i, e[0], pe), end(i, e[1], pe)
            dsu.union(a, b)
            edges.append((pe, a))
    for a, b in h.glue:
        ra, rb = rep[a], rep[b]
        if ra not in cross and ra not in drop:
            dsu.union(ra, rb)
    groups = {}
    order = []
    for k in h.keys():
        r = rep[k]
        if r != k or r in cross or r in drop:
            continue
        root = dsu.find(r)
        if root not in groups:
            groups[root] = Group([], [])
            order.append(root)
        groups[root].vertices.append(r)
    for pe, a in edges:
        root = dsu.find(a)
        if root not in groups:
            groups[root] = Group([], [])
            order.append(root)
        groups[root].edges.append(pe)
    return [groups[r] for r in order]
