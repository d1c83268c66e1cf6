import pytest
from checks import (
    exact_point,
    fiber_count_violations,
    k_embedding_violations,
    sign_constancy_violations,
    sign_sample_violations,
    slab_abscissae,
    slab_keys,
    slab_points,
    slabs,
    thom_collisions,
    vk_adjacency_violations,
)
from conftest import plane_result

from curvecomp.arith.mpoly import MPoly
from curvecomp.arith.parse import parse_poly
from curvecomp.arith.rational import Q
from curvecomp.corpus import PLANE, PLANE_COUNTS
from curvecomp.oracle.grid import sampled_components_plane
from curvecomp.oracle.membership import sa_membership
from curvecomp.roots.algebraic import RealAlgebraicNumber
from curvecomp.roots.fiber import fiber_points
from curvecomp.sa.planar import edge_description, plane_curve_components
from curvecomp.sa.signs import tail_key
from curvecomp.topo.graph import PlanarGraph
from curvecomp.topo.lift import TopologyError, update_edges


def _sheared(name):
    r = plane_result(name)
    f = parse_poly(PLANE[name], 2)
    if not r.shear:
        return f
    return f.compose([MPoly.var(2, 0) + MPoly.var(2, 1) * r.shear, MPoly.var(2, 1)])


def test_count_matches_table_and_grid(plane_name):
    r = plane_result(plane_name)
    assert len(r.components) == PLANE_COUNTS[plane_name]
    if plane_name != "empty":
        assert sampled_components_plane(parse_poly(PLANE[plane_name], 2)) == PLANE_COUNTS[plane_name]


def test_sign_vectors_constant_along_edges(plane_name):
    for part in plane_result(plane_name).graph.parts:
        assert sign_constancy_violations(part) == []


def test_thom_encodings_distinct_per_slab(plane_name):
    for part in plane_result(plane_name).graph.parts:
        assert thom_collisions(part) == []


def test_vertical_crossings_match_fibers(plane_name):
    h = plane_result(plane_name).graph
    assert fiber_count_violations(_sheared(plane_name), h) == []


def test_no_edge_between_k_vertices(plane_name):
    assert vk_adjacency_violations(plane_result(plane_name).graph) == []


def test_k_vertices_are_the_critical_points(plane_name):
    for part in plane_result(plane_name).graph.parts:
        assert k_embedding_violations(part) == []


def test_sign_samples_meet_every_component(plane_name):
    for part in plane_result(plane_name).graph.parts:
        assert sign_sample_violations(part) == []


def test_graph_invariants(plane_name):
    for part in plane_result(plane_name).graph.parts:
        g = part.graph
        assert sum(g.degree(v) for v in g.vertices) == 2 * len(g.edges)
        for col in g.columns:
            assert sum(1 for vid in col.vertices if g.vertices[vid].multiplicity > 1) <= 1
            if col.kind == "intermediate":
                assert all(g.degree(v) + sum(1 for s in "left right".split() if (v, s) in g.tails) == 2
                           for v in col.vertices)


def _component_of(h, i, key):
    comps = h.components()
    vid = key[1] if key[0] == "tail" else key[0]
    return next(c for c, comp in enumerate(comps) if (i, vid) in comp)


def test_edge_descriptions_separate_branches(plane_name):
    """A curve point satisfies its own edge formula, and no other edge's in the slab."""
    h = plane_result(plane_name).graph
    for part in h.parts:
        g = part.graph
        for i in slabs(g):
            keys = slab_keys(g, i)
            if not keys or keys[0][0] == "tail":
                continue
            t = slab_abscissae(g, i, 1)[0]
            pts = slab_points(part.f, t)
            descs = [edge_description(part, e) for e in keys]
            for j, p in enumerate(pts):
                pt = exact_point(t, p)
                assert [d.holds(pt) for d in descs] == [k == j for k in range(len(descs))]


def test_component_descriptions_contain_their_points(plane_name):
    r = plane_result(plane_name)
    h = r.graph
    for n, part in enumerate(h.parts):
        g = part.graph
        for i in slabs(g):
            keys = slab_keys(g, i)
            t = slab_abscissae(g, i, 1)[0]
            for key, p in zip(keys, slab_points(part.f, t)):
                pt = exact_point(t, p, r.shear)
                want = _component_of(h, n, key)
                got = [c.component_id for c in r.components if sa_membership(c, pt)]
                assert got == [want], (key, t)


def test_off_curve_points_are_in_no_component():
    r = plane_result("circle")
    for pt in [(0, 0), (2, 0), (Q(1, 2), Q(1, 2))]:
        assert not any(sa_membership(c, pt) for c in r.components)
    assert sa_membership(r.components[0], (Q(3, 5), Q(-4, 5)))


def test_query_points_become_vertices():
    f = parse_poly(PLANE["circle"], 2)
    P = [(0, 1), (Q(3, 5), Q(4, 5)), (-1, 0)]
    r = plane_curve_components(f, P=P)
    h = r.graph
    assert len(h.point_keys) == 3 and set(h.point_keys) <= h.classes["P"]
    for key, (a, b) in zip(h.point_keys, P):
        (xl, xh), (yl, yh) = h.vertex(key).point.x_interval(), h.vertex(key).point.y_interval()
        assert xl <= Q(a) - r.shear * Q(b) <= xh and yl <= Q(b) <= yh
    assert len(r.components) == 1


def test_query_point_off_curve_rejected():
    f = parse_poly(PLANE["circle"], 2)
    with pytest.raises(Exception):
        plane_curve_components(f, P=[(0, 0)])


def test_squarefree_reduction_keeps_curve():
    a = plane_curve_components(parse_poly("(x1^2 + x2^2 - 1)^2*(x1^2 + x2^2 - 4)", 2))
    b = plane_curve_components(parse_poly("(x1^2 + x2^2 - 1)*(x1^2 + x2^2 - 4)", 2))
    assert len(a.components) == len(b.components) == 2
    assert a.graph.num_vertices() == b.graph.num_vertices()


def test_update_edges_subdivides_strip():
    f = parse_poly("x1^2 + x2^2 - 1", 2)
    g = PlanarGraph(f)
    xs = [Q(-1, 2), Q(1, 2)]
    for x in xs:
        g.add_column(RealAlgebraicNumber.rational(x), "intermediate", fiber_points(f, RealAlgebraicNumber.rational(x)))
    a, b = g.columns[0].vertices, g.columns[1].vertices
    g.add_edge(a[0], b[0])
    g.add_edge(a[1], b[1])
    before = {v: g.degree(v) for v in g.vertices}
    update_edges(fiber_points(f, RealAlgebraicNumber.rational(Q(0))), g, "svalue")
    assert {v: g.degree(v) for v in before} == before
    new = g.columns[1].vertices
    assert len(g.columns) == 3 and all(g.degree(v) == 2 for v in new)
    assert len(g.edges) == 4
    with pytest.raises(TopologyError):
        update_edges(fiber_points(f, RealAlgebraicNumber.rational(Q(1, 2))), g, "svalue")


def test_tails_key_shape():
    assert tail_key(3, "left") == ("tail", 3, "left")
