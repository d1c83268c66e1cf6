"""Component groups of a space curve in one chart, lifted to formulas in R^3."""
from __future__ import annotations

from dataclasses import dataclass

from ..arith.matrix import SquareMatrix, apply_matrix
from ..arith.mpoly import MPoly, at_x1
from ..arith.upoly import UPoly
from ..roots.fiber import NonGenericFiber
from ..roots.points import ExactPoint
from ..sa.formula import SACondition, SADescription
from ..sa.planar import (
    edge_description,
    gen_planar_components,
    line_description,
    vertex_description,
    _mergeable,
)
from ..topo.lift import ShearRequest
from .apparent import ApparentSingularitySet, Group, apparent_singularities, sa_node_resolution
from .param import ChartFailure, OneDimParam, one_dim_param


def linear_images(m: SquareMatrix, nvars: int = 3):
    """The coordinate functions y = M x as MPolys in x."""
    out = []
    for r in m.rows:
        t = {}
        for j, v in enumerate(r):
            if v != 0:
                e = [0] * nvars
                e[j] = 1
                t[tuple(e)] = v
        out.append(MPoly(nvars, t))
    return out


@dataclass
class Chart:
    a: SquareMatrix
    a_inv: SquareMatrix
    param: OneDimParam
    graph: object          # SAIsotopyGraph of w
    app: ApparentSingularitySet
    groups: list           # [Group]
    pieces: list           # pieces per group, in original coordinates

    def group_of(self, point) -> int | None:
        for j, ps in enumerate(self.pieces):
            if any(p.holds(point) for p in ps):
                return j
        return None


def _lift(desc: SADescription, images, system, label_prefix: str) -> SADescription:
    atoms = [a.transport(images) for a in desc.atoms]
    atoms += [SACondition("eq", g) for g in system]
    return SADescription(atoms, f"{label_prefix}{desc.label}", desc.kind)


def _group_pieces(h, group: Group, images, system, prefix):
    pieces = []
    for i, e in group.edges:
        pieces.append(_lift(edge_description(h.parts[i], e, f"edge {i}:{e[0]}-{e[1]}"), images, system, prefix))
    for key in group.vertices:
        i, vid = key
        part = h.parts[i]
        g = part.graph
        if not g.degree(vid) and (vid, "left") in g.tails and (vid, "right") in g.tails:
            pieces.append(_lift(line_description(part, vid, f"branch {i}:{vid}"), images, system, prefix))
        elif not _mergeable(g, vid):
            pieces.append(_lift(vertex_description(part, vid, f"vertex {i}:{vid}"), images, system, prefix))
    return pieces


def partial_components(system, a: SquareMatrix, prefix: str = "") -> Chart:
    """Groups and lifted formulas of V(system) in the chart y = A^{-1} x.

    Points above apparent singularities are left out of every formula.
    """
    if a.det() == 0:
        raise ChartFailure("invertible matrix", "change of coordinates is singular")
    h = [apply_matrix(g, a) for g in system]
    param = one_dim_param(*h)
    if param.w.is_const():
        return Chart(a, a.inverse(), param, None, ApparentSingularitySet(UPoly.const(1)), [], [])
    try:
        graph = gen_planar_components(param.w)
    except (ShearRequest, NonGenericFiber) as exc:
        raise ChartFailure("generic coordinates", str(exc)) from exc
    app = apparent_singularities(param, graph)
    groups = sa_node_resolution(graph, app)
    a_inv = a.inverse()
    images = linear_images(a_inv)
    pieces = [_group_pieces(graph, g, images[:2], system, prefix) for g in groups]
    return Chart(a, a_inv, param, graph, app, groups, pieces)


def lift_vertex(chart: Chart, key) -> ExactPoint:
    """The curve point above a rational-column vertex, in original coordinates."""
    v = chart.graph.vertex(key)
    pt = v.point
    if not v.x.is_rational or pt.kind != "root":
        raise ValueError("only rational-column vertices can be lifted")
    beta = v.x.lo
    eta = pt.yr.copy()
    s10, s11 = chart.param.s1
    num3 = -at_x1(s10, beta)
    den = at_x1(s11, beta)
    if eta.sign_of(den) == 0:
        raise ChartFailure("generic coordinates", "x3 undetermined at a regular fiber")
    ycoords = [den * beta, den * UPoly.x(), num3]
    nums = []
    for r in chart.a.rows:
        acc = UPoly()
        for c, y in zip(r, ycoords):
            if c:
                acc = acc + y * c
        nums.append(acc)
    return ExactPoint(eta, nums, den)
