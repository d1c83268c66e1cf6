"""Semi-algebraic isotopy graphs of plane curves and their connected components."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..arith.mpoly import MPoly, from_upoly, x2_coeffs
from ..arith.precond import precond
from ..arith.rational import Q
from ..arith.subres import bivariate_squarefree, resultant_x2
from ..arith.upoly import UPoly, squarefree_part
from ..roots.algebraic import RealAlgebraicNumber, between, isolate_squarefree
from ..roots.fiber import PlanePoint, _sres, fiber_points
from ..topo.lift import (
    ShearRequest,
    TopologyError,
    derivative_resultants,
    lift_and_connect,
    projection_phase,
    s_values,
    update_edges,
    wbar_family,
)
from .formula import ComponentDescription, SACondition, SADescription
from .signs import _DSU, derivative_polys, propagate_signs, sign_samples, tail_key

X1 = MPoly.var(2, 0)
X2 = MPoly.var(2, 1)


def as_plane_point(f: MPoly, p):
    """Coerce a rational pair or an existing point object to something matchable."""
    if isinstance(p, (tuple, list)):
        a, b = Q(p[0]), Q(p[1])
        return PlanePoint(f, RealAlgebraicNumber.rational(a), "root", yr=RealAlgebraicNumber.rational(b))
    return p


@dataclass
class FactorGraph:
    """Isotopy graph of one factor together with its sign data."""

    f: MPoly
    graph: object
    ws: list
    sigma: dict
    samples: dict
    point_vertices: list = field(default_factory=list)

    @property
    def ders(self):
        return derivative_polys(self.f)


class SAIsotopyGraph:
    """One or several factor graphs glued at shared vertices.

    Vertex keys are pairs (factor index, vertex id).  ``classes`` maps "K",
    "P", "q" and "app" to sets of keys.
    """

    def __init__(self, parts, glue=()):
        self.parts: list[FactorGraph] = list(parts)
        self.glue = list(glue)
        self.classes = {"K": set(), "P": set(), "q": set(), "app": set()}
        self.point_keys: list = []
        for i, p in enumerate(self.parts):
            for vid, v in p.graph.vertices.items():
                for tag in ("K", "P", "q", "app"):
                    if tag in v.tags:
                        self.classes[tag].add((i, vid))

    # -- structure --------------------------------------------------------
    def keys(self):
        return [(i, vid) for i, p in enumerate(self.parts) for vid in p.graph.sorted_vertices()]

    def vertex(self, key):
        return self.parts[key[0]].graph.vertices[key[1]]

    def _dsu(self):
        dsu = _DSU()
        for k in self.keys():
            dsu.find(k)
        for i, p in enumerate(self.parts):
            for u, v in p.graph.edges:
                dsu.union((i, u), (i, v))
        for a, b in self.glue:
            dsu.union(a, b)
        return dsu

    def representatives(self):
        """Map every vertex key to the first key of its glue class."""
        dsu = _DSU()
        for a, b in self.glue:
            dsu.union(a, b)
        order = {k: n for n, k in enumerate(self.keys())}
        best = {}
        for k in self.keys():
            r = dsu.find(k)
            if r not in best or order[k] < order[best[r]]:
                best[r] = k
        return {k: best[dsu.find(k)] for k in self.keys()}

    def components(self):
        """Connected components as lists of vertex keys, in a deterministic order."""
        dsu = self._dsu()
        groups = {}
        for k in self.keys():
            groups.setdefault(dsu.find(k), []).append(k)
        return list(groups.values())

    def num_vertices(self) -> int:
        return len(set(self.representatives().values()))

    def num_edges(self) -> int:
        return sum(len(p.graph.edges) for p in self.parts)

    def dedup_class(self, tag):
        rep = self.representatives()
        return {rep[k] for k in self.classes[tag]}

    def adjacent(self, a, b) -> bool:
        rep = self.representatives()
        ra, rb = rep[a], rep[b]
        for i, p in enumerate(self.parts):
            for u, v in p.graph.edges:
                pair = {rep[(i, u)], rep[(i, v)]}
                if pair == {ra, rb}:
                    return True
        return False


# -- matching points to vertices ----------------------------------------------

def _isolating_intervals(graph, col):
    pts = [graph.vertices[v].point for v in col.vertices]
    out = []
    for j, p in enumerate(pts):
        if p.kind == "ratfun":
            lo = pts[j - 1].y_interval()[1] if j > 0 else None
            hi = pts[j + 1].y_interval()[0] if j + 1 < len(pts) else None
            out.append((lo, hi))
        else:
            out.append(p.y_interval())
    return out


def match_vertex(graph, pt) -> int:
    """Vertex id of the graph vertex equal to ``pt`` (a point of the curve)."""
    i, exact = graph.locate_column(pt.x)
    if not exact:
        raise TopologyError("point abscissa is not a column of the graph")
    col = graph.columns[i]
    if not col.vertices:
        raise TopologyError("point does not lie on the curve")
    for _ in range(400):
        ivs = _isolating_intervals(graph, col)
        lo, hi = pt.y_interval()
        inside = [j for j, (a, b) in enumerate(ivs)
                  if (a is None or a < lo) and (b is None or hi < b)]
        if len(inside) == 1:
            return col.vertices[inside[0]]
        touching = [j for j, (a, b) in enumerate(ivs)
                    if (a is None or a < hi) and (b is None or lo < b)]
        if not touching:
            raise TopologyError("point does not lie on the curve")
        pt.refine((hi - lo) / 4 if hi > lo else Q(1, 1 << 30))
    raise TopologyError("could not match a point to a vertex")


# -- one factor --------------------------------------------------------------

def _s_tags(graph, f, ws):
    ders = derivative_polys(f)
    cache = {}
    for col in graph.columns:
        for k, (dk, w) in enumerate(zip(ders, ws), start=1):
            if dk.is_const() or w.degree < 1:
                continue
            key = (id(col), k)
            if key not in cache:
                cache[key] = col.x.vanishes(w)
            if not cache[key]:
                continue
            for vid in col.vertices:
                if graph.vertices[vid].point.sign(dk) == 0:
                    graph.vertices[vid].tags.add(f"S{k}")


def _separate_special_columns(graph, f):
    """A rational column between any two adjacent special columns, so no edge joins two of their vertices."""
    i = 0
    while i < len(graph.columns) - 1:
        a, b = graph.columns[i], graph.columns[i + 1]
        if a.kind != "intermediate" and b.kind != "intermediate":
            t = between(a.x, b.x)
            update_edges(fiber_points(f, RealAlgebraicNumber.rational(t)), graph, "intermediate",
                         x=RealAlgebraicNumber.rational(t))
        i += 1


def build_factor(f: MPoly, points=(), q: UPoly | None = None) -> FactorGraph:
    coeffs = x2_coeffs(f)
    if len(coeffs) < 2:
        raise ShearRequest("curve has degree 0 in x2")
    if coeffs[-1].degree != 0:
        raise ShearRequest("leading coefficient in x2 is not constant")
    points = [as_plane_point(f, p) for p in points]
    for p in points:
        if p.sign(f) != 0:
            raise TopologyError("query point is not on the curve")
    ws = derivative_resultants(f)
    wbars = wbar_family(ws)
    alphas, betas = projection_phase(f, [wb for _, wb in wbars], [p.x for p in points], avoid_points=False)
    graph = lift_and_connect(f, alphas, betas)
    for k, gamma in s_values(f, ws):
        update_edges(fiber_points(f, gamma), graph, "svalue", x=gamma)
    for p in points:
        _, exact = graph.locate_column(p.x)
        if not exact:
            update_edges(fiber_points(f, p.x), graph, "query", x=p.x)
    _separate_special_columns(graph, f)
    matched = []
    for p in points:
        vid = match_vertex(graph, p)
        graph.vertices[vid].tags.add("P")
        matched.append(vid)
    if q is not None and q.degree >= 1:
        for v in graph.vertices.values():
            if "K" in v.tags and v.x.vanishes(q):
                v.tags.add("q")
    _s_tags(graph, f, ws)
    samples = sign_samples(f, graph, ws)
    sigma = propagate_signs(graph, samples, ws)
    return FactorGraph(f, graph, ws, sigma, samples, matched)


def planar_components(f: MPoly, P=(), q: UPoly | None = None) -> SAIsotopyGraph:
    """Isotopy graph of a curve satisfying the finiteness assumption, with query points P."""
    part = build_factor(f, P, q)
    h = SAIsotopyGraph([part])
    h.point_keys = [(0, v) for v in part.point_vertices]
    return h


# -- several factors -------------------------------------------------------------

def _common_root(fi: MPoly, fj: MPoly, alpha: RealAlgebraicNumber):
    """(num, den) with the unique common x2-root of fi, fj over alpha equal to num/den."""
    p, q = fi, fj
    if q.degree(1) > p.degree(1):
        p, q = q, p
    if p.degree(1) == q.degree(1):
        lp = x2_coeffs(p)[-1].lc
        lq = x2_coeffs(q)[-1].lc
        q = p * lq - q * lp
    if q.degree(1) < 0:
        raise TopologyError("factors share a component")
    if q.degree(1) == 0:
        return None
    s = _sres(p, q, True)
    e = None
    for j in range(q.degree(1) + 1):
        if alpha.sign_of(s[j][-1]) != 0:
            e = j
            break
    if e is None or e == 0:
        return None
    if e > 1:
        raise ShearRequest("two intersection points of factors share an abscissa")
    return -s[1][0], s[1][1]


def connection_points(factors):
    """{(i, j): [PlanePoint on f_i]} for the real intersections of factor pairs i < j."""
    out = {}
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            fi, fj = factors[i], factors[j]
            r = resultant_x2(fi, fj)
            if not r:
                raise TopologyError("factors share a component")
            pts = []
            if r.degree >= 1:
                for alpha in isolate_squarefree(squarefree_part(r)):
                    nd = _common_root(fi, fj, alpha)
                    if nd is None:
                        continue
                    pts.append(PlanePoint(fi, alpha, "ratfun", num=nd[0], den=nd[1]))
            out[(i, j)] = pts
    return out


def connect_graphs(parts, glue_points) -> SAIsotopyGraph:
    """Glue factor graphs at the vertices standing for the same intersection point."""
    glue = []
    for (i, j), pairs in glue_points.items():
        for vi, vj in pairs:
            glue.append(((i, vi), (j, vj)))
    h = SAIsotopyGraph(parts, glue)
    for a, b in glue:
        h.classes["K"].add(a)
        h.classes["K"].add(b)
    return h


def gen_planar_components(f: MPoly, P=(), q: UPoly | None = None) -> SAIsotopyGraph:
    """Isotopy graph of any square-free curve in generic coordinates."""
    factors = precond(f)
    if not factors:
        raise TopologyError("constant polynomial does not define a curve")
    factors = [g for g in factors if not g.is_const()]
    if len(factors) == 1:
        h = planar_components(factors[0], P)
        _tag_q(h, q)
        return h
    P = list(P)
    inter = connection_points(factors)
    per = [[] for _ in factors]
    slots = []  # (i, j, index in per[i], index in per[j])
    for (i, j), pts in inter.items():
        for pt in pts:
            pj = PlanePoint(factors[j], pt.x, "ratfun", num=pt.num, den=pt.den)
            slots.append((i, j, len(per[i]), len(per[j])))
            per[i].append(pt)
            per[j].append(pj)
    user_slots = []
    for n, p in enumerate(P):
        hits = []
        for i, g in enumerate(factors):
            pp = as_plane_point(g, p) if isinstance(p, (tuple, list)) else p
            if pp.sign(g) == 0:
                hits.append((i, len(per[i])))
                per[i].append(pp)
        if not hits:
            raise TopologyError("query point is not on the curve")
        user_slots.append(hits)
    parts = [build_factor(g, per[i]) for i, g in enumerate(factors)]
    glue_points = {}
    for i, j, a, b in slots:
        glue_points.setdefault((i, j), []).append((parts[i].point_vertices[a], parts[j].point_vertices[b]))
    h = connect_graphs(parts, glue_points)
    for hits in user_slots:
        keys = [(i, parts[i].point_vertices[a]) for i, a in hits]
        for a, b in zip(keys, keys[1:]):
            h.glue.append((a, b))
        h.point_keys.append(keys[0])
        for k in keys:
            h.classes["P"].add(k)
    # intersection vertices carry the P tag inside their factor only as a device
    inter_keys = {k for g in h.glue for k in g}
    user_keys = {k for hits in user_slots for k in [(i, parts[i].point_vertices[a]) for i, a in hits]}
    h.classes["P"] = (h.classes["P"] - inter_keys) | user_keys
    _tag_q(h, q)
    return h


def _tag_q(h: SAIsotopyGraph, q):
    if q is None or q.degree < 1:
        return
    for key in set(h.classes["K"]):
        v = h.vertex(key)
        if v.x.vanishes(q):
            v.tags.add("q")
            h.classes["q"].add(key)


# -- descriptions -------------------------------------------------------------

def _x_bound(x: RealAlgebraicNumber):
    if x.is_rational:
        return x
    return RealAlgebraicNumber(squarefree_part(x.poly), x.lo, x.hi)


def _mergeable(graph, vid) -> bool:
    v = graph.vertices[vid]
    return v.column.kind == "intermediate" and not v.tags


def _edge_bound(graph, vid, side):
    """Abscissa bounding an edge on one side, walking through plain rational-column vertices."""
    while _mergeable(graph, vid):
        if (vid, side) in graph.tails:
            return None
        nxt = graph.left_edges(vid) if side == "left" else graph.right_edges(vid)
        if len(nxt) != 1:
            break
        vid = nxt[0][0] if side == "left" else nxt[0][1]
    return _x_bound(graph.vertices[vid].x)


def _sign_atoms(f: MPoly, sig):
    atoms = []
    for k, (dk, s) in enumerate(zip(derivative_polys(f), sig), start=1):
        if dk.is_const():
            continue
        if s == 0:
            raise TopologyError("zero derivative sign along an edge")
        atoms.append(SACondition("gt" if s > 0 else "lt", dk))
    atoms.append(SACondition("eq", f))
    return atoms


def edge_description(part: FactorGraph, e, label="") -> SADescription:
    g = part.graph
    u, v = e
    lo = _edge_bound(g, u, "left")
    hi = _edge_bound(g, v, "right")
    atoms = []
    if lo is not None or hi is not None:
        atoms.append(SACondition("range", X1, lo, hi))
    atoms += _sign_atoms(part.f, part.sigma[e])
    return SADescription(atoms, label or f"edge {u}-{v}", "edge")


def line_description(part: FactorGraph, vid, label="") -> SADescription:
    """A lone rational-column vertex with tails on both sides (a graph without edges)."""
    sig = part.sigma[tail_key(vid, "left")]
    return SADescription(_sign_atoms(part.f, sig), label or f"branch {vid}", "edge")


def vertex_description(part: FactorGraph, vid, label="") -> SADescription:
    g = part.graph
    v = g.vertices[vid]
    col = v.column
    atoms = []
    x = v.x
    if x.is_rational:
        atoms.append(SACondition("eq", X1 - x.lo))
    else:
        atoms.append(SACondition("eq", from_upoly(squarefree_part(x.poly), 2)))
        atoms.append(SACondition("range", X1, RealAlgebraicNumber.rational(x.lo),
                                 RealAlgebraicNumber.rational(x.hi)))
    p = v.point
    if p.kind == "root" and p.yr.is_rational:
        atoms.append(SACondition("eq", X2 - p.yr.lo))
    else:
        ivs = _isolating_intervals(g, col)
        a, b = ivs[v.rank]
        atoms.append(SACondition("range", X2, None if a is None else RealAlgebraicNumber.rational(a),
                                 None if b is None else RealAlgebraicNumber.rational(b)))
    atoms.append(SACondition("eq", part.f))
    return SADescription(atoms, label or f"vertex {vid}", "vertex")


def _needs_vertex_piece(graph, vid) -> bool:
    return not _mergeable(graph, vid)


def plane_components_output(h: SAIsotopyGraph, omit=frozenset()):
    """One ComponentDescription per connected component.

    ``omit`` holds vertex keys whose points must stay out of every piece.
    """
    rep = h.representatives()
    out = []
    for cid, comp in enumerate(h.components()):
        comp_set = set(comp)
        pieces = []
        seen = set()
        for i, part in enumerate(h.parts):
            g = part.graph
            for e in g.edges:
                if (i, e[0]) in comp_set:
                    pieces.append(edge_description(part, e, f"edge {i}:{e[0]}-{e[1]}"))
        for key in comp:
            i, vid = key
            part = h.parts[i]
            g = part.graph
            r = rep[key]
            if r in seen:
                continue
            seen.add(r)
            if any(k in omit for k in h.keys() if rep[k] == r):
                continue
            if not g.degree(vid) and (vid, "left") in g.tails and (vid, "right") in g.tails:
                pieces.append(line_description(part, vid, f"branch {i}:{vid}"))
            elif _needs_vertex_piece(g, vid):
                pieces.append(vertex_description(part, vid, f"vertex {i}:{vid}"))
        v0 = h.vertex(comp[0])
        out.append(ComponentDescription(cid, pieces, 2, v0.point.box_json()))
    return out


def description_size(descs):
    """Counts of pieces, atoms, maximal total degree and coefficient bit size."""
    from ..arith.rational import bit_size
    pieces = atoms = deg = bits = 0
    for d in descs:
        for p in d.pieces:
            pieces += 1
            for a in p.atoms:
                atoms += 1
                deg = max(deg, a.poly.total_degree())
                for c in a.poly.terms.values():
                    bits = max(bits, bit_size(c))
    return {"pieces": pieces, "atoms": atoms, "max_degree": deg, "max_bits": bits}


# -- driver with shear retries -------------------------------------------------

@dataclass
class PlaneResult:
    graph: SAIsotopyGraph
    components: list
    shear: Q
    attempts: int


class GenericityExhausted(RuntimeError):
    pass


def shear_candidates(rng, budget: int):
    yield Q(0)
    for n in range(budget - 1):
        bound = 2 + n
        s = Q(rng.randint(-bound, bound), rng.randint(1, 3))
        if s:
            yield s


def plane_curve_components(f: MPoly, P=(), q: UPoly | None = None, seed: int = 0, budget: int = 12) -> PlaneResult:
    """Components of a plane curve, shearing x1 -> x1 + s*x2 when coordinates are not generic.

    Query points must be rational pairs here; descriptions are returned in the
    original coordinates.
    """
    import random
    from ..roots.fiber import NonGenericFiber
    rng = random.Random(seed)
    if not f.is_const():
        f = bivariate_squarefree(f)
    last = None
    for n, s in enumerate(shear_candidates(rng, budget), start=1):
        g = f.compose([X1 + X2 * s, X2]) if s else f
        pts = [(Q(a) - s * Q(b), Q(b)) for a, b in P]
        qq = q
        if s and q is not None and q.degree >= 1:
            qq = None  # roots of q refer to the unsheared projection
        try:
            h = gen_planar_components(g, pts, qq)
            comps = plane_components_output(h)
        except (ShearRequest, NonGenericFiber) as exc:
            last = exc
            continue
        if s:
            back = [X1 - X2 * s, X2]
            for c in comps:
                c.pieces = [p.transport(back) for p in c.pieces]
        return PlaneResult(h, comps, s, n)
    raise GenericityExhausted(f"no generic shear found in {budget} attempts: {last}")
