"""Graph sizes and run times over the corpus, against the degree bounds.

Run ``python benchmarks/bench_sizes.py``.  For a curve of degree d with n
query points the reference sizes are d^4 + d*n vertices and d*(d^3 + n + 1)
edges; the printed ratios are measured size over reference size.
"""
from __future__ import annotations

import time

from curvecomp.arith.parse import parse_poly, parse_system
from curvecomp.corpus import PLANE, SPACE
from curvecomp.sa.planar import plane_curve_components
from curvecomp.space.components import curve_components


def ratios(h, degree: int, n_points: int = 0):
    nv, ne = h.num_vertices(), h.num_edges()
    bv = degree ** 4 + degree * n_points
    be = degree * (degree ** 3 + n_points + 1)
    return nv, ne, nv / bv if bv else 0.0, ne / be if be else 0.0


def row(label, secs, nv, ne, rv, re):
    print(f"{label:26s} {secs:7.2f}s  |V|={nv:4d} |E|={ne:4d}  V/ref={rv:.3f}  E/ref={re:.3f}")
    return max(rv, re)


def main():
    worst = 0.0
    for name, text in PLANE.items():
        f = parse_poly(text, 2)
        t = time.perf_counter()
        r = plane_curve_components(f)
        worst = max(worst, row(name, time.perf_counter() - t, *ratios(r.graph, f.total_degree())))
    for name, eqs in SPACE.items():
        t = time.perf_counter()
        res = curve_components(parse_system("\n".join(eqs), 3))
        secs = time.perf_counter() - t
        for tag, chart in (("A1", res.chart1), ("A2", res.chart2)):
            if chart.graph is not None:
                worst = max(worst, row(f"{name}/{tag}", secs, *ratios(chart.graph, chart.param.w.total_degree())))
    print(f"largest ratio {worst:.3f}; constant C <= 16 {'holds' if worst <= 16 else 'FAILS'}")


if __name__ == "__main__":
    main()
