"""Grid kernels for the sampling oracle.

``CURVECOMP_KERNELS=numpy`` selects the plain numpy versions; otherwise numba
is used when it imports.  ``CURVECOMP_THREADS`` caps numba's thread count.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit, prange
    HAVE_NUMBA = True
    if "NUMBA_THREADING_LAYER_PRIORITY" not in os.environ:
        # probe tbb last; old tbb builds only produce a warning
        numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
except ImportError:  # pragma: no cover - numba is an optional extra
    HAVE_NUMBA = False


def backend() -> str:
    want = os.environ.get("CURVECOMP_KERNELS", "numba").strip().lower()
    if want == "numpy" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


def _set_threads():
    n = os.environ.get("CURVECOMP_THREADS")
    if HAVE_NUMBA and n:
        numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))


# -- numpy -------------------------------------------------------------------

def grid_values_numpy(coef: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """f on the grid xs x ys; coef[i, j] multiplies x^i y^j."""
    return np.polynomial.polynomial.polygrid2d(xs, ys, coef)


def crossing_cells_numpy(vals: np.ndarray) -> np.ndarray:
    """Cells whose four corners do not share one strict sign."""
    s = np.sign(vals)
    a, b, c, d = s[:-1, :-1], s[1:, :-1], s[:-1, 1:], s[1:, 1:]
    hi = np.maximum(np.maximum(a, b), np.maximum(c, d))
    lo = np.minimum(np.minimum(a, b), np.minimum(c, d))
    return (hi >= 0) & (lo <= 0)


def count_clusters_numpy(mask: np.ndarray) -> int:
    """Number of 8-connected clusters of True cells."""
    idx = np.argwhere(mask)
    if not len(idx):
        return 0
    ncol = mask.shape[1]
    flat = idx[:, 0] * ncol + idx[:, 1]
    pos = {int(k): n for n, k in enumerate(flat)}
    parent = list(range(len(flat)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for n, (i, j) in enumerate(idx):
        for di, dj in ((0, 1), (1, -1), (1, 0), (1, 1)):
            m = pos.get(int((i + di) * ncol + j + dj)) if 0 <= j + dj < ncol else None
            if m is not None:
                ra, rb = find(n), find(m)
                if ra != rb:
                    parent[ra] = rb
    return sum(1 for n in range(len(flat)) if find(n) == n)


# -- numba -------------------------------------------------------------------

if HAVE_NUMBA:
    @njit(parallel=True, cache=True)
    def _grid_values_nb(coef, xs, ys):
        nx, ny = len(xs), len(ys)
        dx, dy = coef.shape
        out = np.empty((nx, ny))
        for i in prange(nx):
            # collapse x first: f(x_i, y) as a polynomial in y
            x = xs[i]
            row = np.zeros(dy)
            for a in range(dx - 1, -1, -1):
                for b in range(dy):
                    row[b] = row[b] * x + coef[a, b]
            for j in range(ny):
                y = ys[j]
                acc = 0.0
                for b in range(dy - 1, -1, -1):
                    acc = acc * y + row[b]
                out[i, j] = acc
        return out

    @njit(cache=True)
    def _crossing_cells_nb(vals):
        nx, ny = vals.shape
        out = np.zeros((nx - 1, ny - 1), dtype=np.bool_)
        for i in range(nx - 1):
            for j in range(ny - 1):
                pos = False
                neg = False
                for v in (vals[i, j], vals[i + 1, j], vals[i, j + 1], vals[i + 1, j + 1]):
                    if v >= 0.0:
                        pos = True
                    if v <= 0.0:
                        neg = True
                out[i, j] = pos and neg
        return out

    @njit(cache=True)
    def _find(parent, a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    @njit(cache=True)
    def _count_clusters_nb(mask):
        nx, ny = mask.shape
        parent = np.arange(nx * ny)
        for i in range(nx):
            for j in range(ny):
                if not mask[i, j]:
                    continue
                a = i * ny + j
                for di, dj in ((0, 1), (1, -1), (1, 0), (1, 1)):
                    u, v = i + di, j + dj
                    if u < nx and 0 <= v < ny and mask[u, v]:
                        ra = _find(parent, a)
                        rb = _find(parent, u * ny + v)
                        if ra != rb:
                            parent[ra] = rb
        total = 0
        for i in range(nx):
            for j in range(ny):
                a = i * ny + j
                if mask[i, j] and _find(parent, a) == a:
                    total += 1
        return total


# -- dispatch ------------------------------------------------------------------

def grid_values(coef, xs, ys):
    if backend() == "numba":
        _set_threads()
        return _grid_values_nb(np.ascontiguousarray(coef, dtype=np.float64), xs, ys)
    return grid_values_numpy(coef, xs, ys)


def crossing_cells(vals):
    if backend() == "numba":
        return _crossing_cells_nb(vals)
    return crossing_cells_numpy(vals)


def count_clusters(mask) -> int:
    if backend() == "numba":
        return int(_count_clusters_nb(mask))
    return count_clusters_numpy(mask)
