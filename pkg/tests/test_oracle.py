import json
from fractions import Fraction

import pytest
import sympy as sp
from conftest import plane_result
from hypothesis import given
from helpers import up_sympy, upolys

from curvecomp.arith.parse import parse_poly, parse_system
from curvecomp.arith.rational import Q
from curvecomp.corpus import PLANE
from curvecomp.oracle.grid import GridSpec, OracleInconclusive, default_spec, grid_count, sampled_components_plane
from curvecomp.oracle.membership import sa_membership
from curvecomp.oracle.slices import sampled_components_space, slice_count
from curvecomp.oracle.sturm import sturm_count
from curvecomp.roots.points import ExactPoint


@pytest.mark.parametrize("name", ["circle", "nested_circles", "lemniscate", "three_lines"])
def test_grid_count_stable_under_doubling(name):
    f = parse_poly(PLANE[name], 2)
    spec = default_spec(f, 256)
    counts = {grid_count(f, GridSpec(spec.box, n)) for n in (256, 512, 1024)}
    assert len(counts) == 1


def test_grid_box_holds_special_points():
    f = parse_poly("(x1 - 10)^2 + x2^2 - 1", 2)
    (xlo, xhi), (ylo, yhi) = default_spec(f).box
    assert xlo < 9 and xhi > 11 and ylo < -1 and yhi > 1


def test_grid_sees_nothing_on_empty_curve():
    f = parse_poly(PLANE["empty"], 2)
    assert grid_count(f, GridSpec(((-4, 4), (-4, 4)), 128)) == 0


def test_grid_merges_close_circles_until_cells_fit_the_gap():
    # circles about 1/50 apart: cells wider than the gap bridge them
    f = parse_poly("(x1^2 + x2^2 - 1)*(x1^2 + x2^2 - 1 - 1/25)", 2)
    box = ((-2, 2), (-2, 2))
    assert [grid_count(f, GridSpec(box, n)) for n in (256, 512)] == [1, 1]
    assert sampled_components_plane(f, GridSpec(box, 1024)) == 2


def test_inconclusive_when_never_stable():
    f = parse_poly("(x1^2 + x2^2 - 1)*(x1^2 + x2^2 - 1 - 1/25)", 2)
    with pytest.raises(OracleInconclusive):
        sampled_components_plane(f, GridSpec(((-2, 2), (-2, 2)), 32), doublings=1)


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(((0, 1), (0, 1)), 0)


@pytest.mark.parametrize("text, count", [
    ("x2 - x1^2\nx3 - x1^3", 1),
    ("x1^2 + x2^2 - 1\nx3^2 - 1", 2),
    ("x1^2 + x2^2 - 1\nx3^2 - 4*x3 + 3", 2),
    ("x1^2 + x2^2 + x3^2 - 1\nx3", 1),
])
def test_slice_oracle_counts(text, count):
    assert sampled_components_space(parse_system(text, 3)) == count


def test_slice_count_stable_under_doubling():
    system = parse_system("x1^2 + x2^2 + x3^2 - 4\n(x1 - 1)^2 + x2^2 - 1", 3)
    assert slice_count(system, 1024) == slice_count(system, 2048) == 1


@given(upolys(max_degree=6))
def test_sturm_matches_sympy_count(p):
    if p.degree < 1:
        return
    assert sturm_count(p, (None, None)) == sp.Poly(up_sympy(p)).count_roots()


def test_sturm_half_lines():
    assert sturm_count([-1, 0, 1], (None, 0)) == 1
    assert sturm_count([-1, 0, 1], (0, None)) == 1
    assert sturm_count(sp.Poly(sp.Symbol("t") ** 2 - 2), (Fraction(1), Fraction(2))) == 1


def test_membership_json_roundtrip():
    r = plane_result("nested_circles")
    on = [(Q(3, 5), Q(4, 5)), (Q(6, 5), Q(8, 5))]
    for c in r.components:
        obj = json.loads(json.dumps(c.to_json()))
        assert [sa_membership(obj, p) for p in on] == [sa_membership(c, p) for p in on]
    assert sorted(sum(sa_membership(c, p) for c in r.components) for p in on) == [1, 1]


def test_membership_of_atoms():
    desc = {"op": "and", "atoms": [
        {"kind": "eq", "poly": "x1^2 + x2^2 - 1"},
        {"kind": "gt", "poly": "x2"},
        {"kind": "range", "poly": "x1", "lo": {"root_of": "t^2 - 1/2", "lo": "0", "hi": "1"}, "hi": None},
    ]}
    assert sa_membership(desc, (Q(3, 5), Q(4, 5)), 2) is False
    assert sa_membership(desc, (Q(4, 5), Q(3, 5)), 2) is True
    assert sa_membership(desc, (Q(4, 5), Q(-3, 5)), 2) is False


def test_membership_at_exact_algebraic_point():
    from curvecomp.arith.upoly import UPoly
    from curvecomp.roots.algebraic import isolate_roots
    r = plane_result("circle")
    s = isolate_roots(UPoly((-1, 0, 2)))[-1]   # 1/sqrt 2
    pt = ExactPoint(s, [UPoly((0, 1)), UPoly((0, -1))])
    assert sa_membership(r.components[0], pt)
