"""Acceptance criteria, one test each; every test records a PASS/FAIL line.

The lines are printed in pytest's terminal summary, and directly when the
module is run as a script.
"""
import random
import time

import pytest
import sympy as sp
from checks import (
    fiber_count_violations,
    k_embedding_violations,
    sign_constancy_violations,
    sign_sample_violations,
    size_ratios,
    thom_collisions,
    vk_adjacency_violations,
)
from conftest import space_system
from helpers import mp_sympy
from test_arith import _direct_s
from test_space import PARAMS, _app_parameters, _point, _valence

from curvecomp.arith.mpoly import MPoly
from curvecomp.arith.parse import parse_poly
from curvecomp.arith.precond import precond
from curvecomp.arith.rational import Q
from curvecomp.corpus import PLANE, SPACE
from curvecomp.oracle.grid import sampled_components_plane
from curvecomp.oracle.membership import sa_membership
from curvecomp.oracle.slices import sampled_components_space
from curvecomp.roots.algebraic import RealAlgebraicNumber
from curvecomp.sa.planar import plane_curve_components
from curvecomp.space.components import curve_components

RESULTS = []
C_MAX = 16


def report(name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


_PLANE = {}
_SPACE = {}


def _plane(name):
    if name not in _PLANE:
        t = time.perf_counter()
        r = plane_curve_components(parse_poly(PLANE[name], 2))
        _PLANE[name] = (r, time.perf_counter() - t)
    return _PLANE[name][0]


def _space(name, seed=0):
    key = (name, seed)
    if key not in _SPACE:
        _SPACE[key] = curve_components(space_system(name), seed=seed)
    return _SPACE[key]


def _sheared(name, r):
    f = parse_poly(PLANE[name], 2)
    if not r.shear:
        return f
    return f.compose([MPoly.var(2, 0) + MPoly.var(2, 1) * r.shear, MPoly.var(2, 1)])


def test_plane_corpus_equivalence():
    bad, slowest = [], 0.0
    for name in PLANE:
        r = _plane(name)
        secs = _PLANE[name][1]
        slowest = max(slowest, secs)
        f = parse_poly(PLANE[name], 2)
        oracle = sampled_components_plane(f)
        if len(r.components) != oracle or secs >= 60:
            bad.append((name, len(r.components), oracle, round(secs, 1)))
    report("plane corpus count equals oracle, < 60 s per curve", len(PLANE) >= 12 and not bad,
           f"{len(PLANE)} curves, slowest {slowest:.1f} s, mismatches {bad}")


def test_sign_constancy():
    n = sum(len(sign_constancy_violations(p, 3)) for name in PLANE for p in _plane(name).graph.parts)
    report("sign vectors constant on 3 interior samples per edge", n == 0, f"{n} mismatches")


def test_thom_uniqueness():
    n = sum(len(thom_collisions(p)) for name in PLANE for p in _plane(name).graph.parts)
    report("sign vectors distinct among co-slab edges", n == 0, f"{n} collisions")


def test_isotopy_clauses():
    fib = vk = emb = 0
    for name in PLANE:
        r = _plane(name)
        fib += len(fiber_count_violations(_sheared(name, r), r.graph, n=20))
        vk += len(vk_adjacency_violations(r.graph))
        emb += sum(len(k_embedding_violations(p)) for p in r.graph.parts)
    # query points must also become vertices
    P = [(0, 1), (Q(3, 5), Q(4, 5)), (-1, 0), (Q(-3, 5), Q(-4, 5))]
    h = plane_curve_components(parse_poly(PLANE["circle"], 2), P=P).graph
    missing = len(P) - len(set(h.point_keys) & h.classes["P"])
    report("fiber counts at 20 abscissae, V_K non-adjacency, P and K embedded",
           fib == vk == emb == missing == 0,
           f"fiber {fib}, V_K {vk}, K unmatched {emb}, P unmatched {missing}")


def test_precond_line_circle():
    f = parse_poly("x2*(x1^2 + x2^2 - 1)", 2)
    factors = precond(f)
    want = [mp_sympy(parse_poly(t, 2)) for t in ("x2", "x1^2 + x2^2 - 1")]
    got = [mp_sympy(g) for g in factors]
    match = len(got) == 2 and all(any(sp.simplify(a / b).is_number for b in got) for a in want)
    prod = sp.Integer(1)
    for g in got:
        prod *= g
    ok = match and all(_direct_s(g) for g in factors) and sp.simplify(prod / mp_sympy(f)).is_number
    report("PreCond splits line x circle into finite factors", ok, f"{[str(g) for g in got]}")


def test_sign_samples():
    n = sum(len(sign_sample_violations(p)) for name in PLANE for p in _plane(name).graph.parts)
    report("sign samples meet every component of C minus K and S_k, s_k nonzero", n == 0, f"{n} violations")


def test_space_corpus():
    counts = {name: len(_space(name).components) for name in SPACE}
    oracle = {name: sampled_components_space(space_system(name)) for name in SPACE}
    valences, first, ok_runs = [], 0, 0
    for seed in range(100):
        try:
            res = _space("twisted_cubic", seed)
        except Exception:
            continue
        ok_runs += len(res.components) == 1
        first += res.disjoint_first_try
        for chart in (res.chart1, res.chart2):
            valences += [_valence(chart.graph, k) for k in chart.app.crunodes]
    ok = (counts == oracle and sorted(counts.values()) == [1, 1, 2] and valences
          and set(valences) == {4} and first >= 95 and ok_runs == 100)
    report("space corpus counts, node valence 4, disjoint failure sets", bool(ok),
           f"counts {counts}, oracle {oracle}, {len(valences)} nodes with valences {sorted(set(valences))}, "
           f"disjoint first try {first}/100, successful runs {ok_runs}/100")


def _curve_samples(name, res, branch, n=100):
    etas = []
    for chart in (res.chart1, res.chart2):
        etas += _app_parameters(chart, branch)
    rng = random.Random(11)
    while len(etas) < n:
        etas.append(RealAlgebraicNumber.rational(Q(rng.randint(-400, 400), rng.choice([37, 41, 43]))))
    return [_point(eta, branch) for eta in etas[:n]]


def test_two_chart_coverage():
    bad = []
    for name in SPACE:
        res = _space(name)
        samples = [_curve_samples(name, res, b) for b in PARAMS[name]]
        owner = []
        for pts in samples:
            ids = [[c.component_id for c in res.components if sa_membership(c, p, 3)] for p in pts]
            if any(len(i) != 1 for i in ids) or len({i[0] for i in ids}) != 1:
                bad.append((name, "branch not in exactly one component"))
                owner.append(None)
            else:
                owner.append(ids[0][0])
        if len(set(owner)) != len(owner):
            bad.append((name, "two branches share a component"))
    report("100 curve points per component inside, other components' points outside", not bad, f"{bad}")


def size_table():
    rows = []
    for name in PLANE:
        f = parse_poly(PLANE[name], 2)
        rows.append((name, *size_ratios(_plane(name).graph, f)))
    P = [(0, 1), (Q(3, 5), Q(4, 5)), (-1, 0)]
    f = parse_poly(PLANE["circle"], 2)
    rows.append(("circle+P", *size_ratios(plane_curve_components(f, P=P).graph, f, len(P))))
    for name in SPACE:
        for tag, chart in (("A1", _space(name).chart1), ("A2", _space(name).chart2)):
            if chart.graph is not None:
                rows.append((f"{name}/{tag}", *size_ratios(chart.graph, chart.param.w)))
    return rows


def test_size_bounds():
    rows = size_table()
    worst = max(max(r[3], r[4]) for r in rows)
    for name, nv, ne, rv, re in rows:
        print(f"  size {name:24s} |V|={nv:4d} |E|={ne:4d}  V/bound={rv:.3f}  E/bound={re:.3f}")
    report(f"graph sizes within C * bound, C <= {C_MAX}", worst <= C_MAX, f"largest ratio {worst:.3f}")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
