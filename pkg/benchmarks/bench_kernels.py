"""Grid oracle kernels: numba against plain numpy.

Run ``python benchmarks/bench_kernels.py [--sizes 256 512 ...] [--repeat 5]``.
Every size is checked for identical results before it is timed; numba's
compile time is paid once up front and reported on its own line.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from curvecomp.arith.parse import parse_poly
from curvecomp.corpus import PLANE
from curvecomp.oracle import kernels
from curvecomp.oracle.grid import _coef_matrix, default_spec


def _grid(spec, n):
    (xlo, xhi), (ylo, yhi) = spec.box
    hx, hy = float(xhi - xlo) / n, float(yhi - ylo) / n
    xs = float(xlo) + hx * (np.arange(n + 1) + 0.1234567)
    ys = float(ylo) + hy * (np.arange(n + 1) + 0.1234567)
    return xs, ys


def _pipeline(impl, coef, xs, ys):
    vals = impl["values"](coef, xs, ys)
    mask = impl["cells"](vals)
    return vals, mask, impl["clusters"](mask)


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--curve", default="random_deg6", choices=sorted(PLANE))
    ap.add_argument("--sizes", type=int, nargs="+", default=[256, 512, 1024, 2048])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    f = parse_poly(PLANE[args.curve], 2)
    spec = default_spec(f)
    coef = _coef_matrix(f)
    impls = {"numpy": {"values": kernels.grid_values_numpy, "cells": kernels.crossing_cells_numpy,
                       "clusters": kernels.count_clusters_numpy}}
    if kernels.HAVE_NUMBA:
        impls["numba"] = {"values": lambda c, x, y: kernels._grid_values_nb(np.ascontiguousarray(c), x, y),
                          "cells": kernels._crossing_cells_nb,
                          "clusters": lambda m: int(kernels._count_clusters_nb(m))}
        kernels._set_threads()
        t = time.perf_counter()
        _pipeline(impls["numba"], coef, *_grid(spec, 16))
        print(f"numba compile+first call: {time.perf_counter() - t:.2f}s")
    else:
        print("numba not installed: numpy timings only")

    print(f"curve {args.curve}, box {[[float(a), float(b)] for a, b in spec.box]}")
    print(f"{'n':>6} {'stage':>9} " + " ".join(f"{k:>10}" for k in impls) + "   speedup")
    for n in args.sizes:
        xs, ys = _grid(spec, n)
        ref = None
        for name, impl in impls.items():
            vals, mask, count = _pipeline(impl, coef, xs, ys)
            if ref is None:
                ref = (vals, mask, count)
            elif not (np.allclose(vals, ref[0], rtol=1e-9, atol=0) and (mask == ref[1]).all() and count == ref[2]):
                raise SystemExit(f"{name} disagrees with numpy at n={n}")
        vals, mask = ref[0], ref[1]
        stages = {
            "values": lambda impl: impl["values"](coef, xs, ys),
            "cells": lambda impl: impl["cells"](vals),
            "clusters": lambda impl: impl["clusters"](mask),
        }
        for stage, run in stages.items():
            times = {k: _best(lambda impl=impl: run(impl), args.repeat) for k, impl in impls.items()}
            ratio = times["numpy"] / times["numba"] if "numba" in times and times["numba"] > 0 else float("nan")
            print(f"{n:>6} {stage:>9} " + " ".join(f"{t * 1e3:>8.2f}ms" for t in times.values()) + f"   {ratio:6.1f}x")
        print(f"{n:>6} {'clusters':>9} = {ref[2]}")


if __name__ == "__main__":
    main()
