"""Sign conditions of the x2-derivatives of f along the edges of a curve graph.

For each k the curve minus V(f, d^k f/dx2^k) is cut into pieces on which the
sign of d^k f/dx2^k is constant.  A finite sample set meets every such piece;
the sign found at the sample is then spread along the graph.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..arith.mpoly import MPoly
from ..arith.rational import Q, simple_between
from ..arith.upoly import UPoly, squarefree_part
from ..roots.algebraic import RealAlgebraicNumber, isolate_squarefree, root_bound
from ..roots.fiber import fiber_points
from ..topo.lift import TopologyError, derivative_resultants


@dataclass
class Sample:
    k: int
    theta: Q
    point: object  # PlanePoint
    rank: int
    sign: int


def tail_key(vid: int, side: str):
    return ("tail", vid, side)


def _avoid_columns(r, columns):
    return all(c.x.compare_rational(r) != 0 for c in columns)


def _separators(p: UPoly, columns):
    """Rationals strictly between consecutive roots of p and beyond both ends."""
    roots = isolate_squarefree(p) if p.degree >= 1 else []
    b = Q(int(root_bound(p)) + 1) if p.degree >= 1 else Q(1)
    lo_ext = -(b + 1)
    hi_ext = b + 1
    while not _avoid_columns(lo_ext, columns):
        lo_ext -= Q(1, 3)
    while not _avoid_columns(hi_ext, columns):
        hi_ext += Q(1, 3)
    out = [lo_ext]
    for a, c in zip(roots, roots[1:]):
        while a.hi >= c.lo:
            a._halve()
            c._halve()
        lo, hi = a.hi, c.lo
        t = simple_between(lo, hi)
        while not _avoid_columns(t, columns):
            if t - lo > hi - t:
                hi = t
            else:
                lo = t
            t = simple_between(lo, hi)
        out.append(t)
    out.append(hi_ext)
    return out, roots


def derivative_polys(f: MPoly):
    d = f.degree(1)
    out = []
    g = f
    for _ in range(d):
        g = g.deriv(1)
        out.append(g)
    return out


def sample_polys(ws):
    """P_k = sqf(w_1 * w_k) for k = 1..d (P_1 = sqf(w_1))."""
    out = []
    for k, w in enumerate(ws, start=1):
        p = ws[0] if k == 1 else ws[0] * w
        out.append(squarefree_part(p) if p.degree >= 1 else UPoly.const(1))
    return out


def assign_signs(k: int, theta, f: MPoly, dk: MPoly):
    """Fiber points over x1 = theta with the exact sign of dk at each."""
    x = RealAlgebraicNumber.rational(theta)
    return [Sample(k, Q(theta), p, j, p.sign(dk)) for j, p in enumerate(fiber_points(f, x))]


def sign_samples(f: MPoly, graph, ws=None):
    """{k: [Sample]} for every k whose derivative is not constant."""
    if ws is None:
        ws = derivative_resultants(f)
    ders = derivative_polys(f)
    out = {}
    for k, (dk, pk) in enumerate(zip(ders, sample_polys(ws)), start=1):
        if dk.is_const():
            continue
        thetas, _ = _separators(pk, graph.columns)
        out[k] = [s for t in thetas for s in assign_signs(k, t, f, dk)]
    return out


def _locate(graph, sample: Sample):
    """Edge or tail key carrying the fiber point of a sample."""
    i, exact = graph.locate_column(RealAlgebraicNumber.rational(sample.theta))
    if exact:
        raise TopologyError("sample abscissa coincides with a column")
    if i < 0:
        tails = graph.tails_at("left")
        return tail_key(tails[sample.rank], "left"), len(tails)
    if i >= len(graph.columns) - 1:
        tails = graph.tails_at("right")
        return tail_key(tails[sample.rank], "right"), len(tails)
    strip = graph.strip_edges(i)
    return strip[sample.rank], len(strip)


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


def graph_keys(graph):
    return list(graph.edges) + [tail_key(v, s) for v, s in sorted(graph.tails)]


def propagate_signs(graph, samples, ws=None):
    """{edge or tail key: tuple of signs for k = 1..d}.

    Constant derivatives take their own sign; the others are spread from the
    samples across vertices whose abscissa is not a root of P_k.
    """
    f = graph.f
    if ws is None:
        ws = derivative_resultants(f)
    ders = derivative_polys(f)
    pks = sample_polys(ws)
    keys = graph_keys(graph)
    incident = {vid: [] for vid in graph.vertices}
    for e in graph.edges:
        incident[e[0]].append(e)
        incident[e[1]].append(e)
    for v, s in graph.tails:
        incident[v].append(tail_key(v, s))
    root_col = {}
    sigma = {key: [] for key in keys}
    for k, dk in enumerate(ders, start=1):
        if dk.is_const():
            c = dk.const_value()
            for key in keys:
                sigma[key].append((c > 0) - (c < 0))
            continue
        pk = pks[k - 1]
        dsu = _DSU()
        for key in keys:
            dsu.find(key)
        for col in graph.columns:
            cid = id(col)
            if (cid, k) not in root_col:
                root_col[(cid, k)] = pk.degree >= 1 and col.x.vanishes(pk)
            if root_col[(cid, k)]:
                continue
            for vid in col.vertices:
                inc = incident[vid]
                for a in inc[1:]:
                    dsu.union(inc[0], a)
        found = {}
        for s in samples.get(k, []):
            key, _ = _locate(graph, s)
            r = dsu.find(key)
            if r in found and found[r] != s.sign:
                raise TopologyError(f"conflicting signs for derivative {k} on one piece")
            found[r] = s.sign
        for key in keys:
            r = dsu.find(key)
            if r not in found:
                raise TopologyError(f"no sample for derivative {k} on a piece of the curve")
            sigma[key].append(found[r])
    return {key: tuple(v) for key, v in sigma.items()}
