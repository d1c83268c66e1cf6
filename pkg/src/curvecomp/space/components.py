"""Connected components of a real space curve from two charts.

Each chart describes the curve except above its apparent singularities.  Two
charts whose failure sets are disjoint cover everything; a regular curve
point taken from each chart-1 group tells which chart-2 group belongs to the
same component.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import gmpy2

from ..arith.matrix import SquareMatrix, random_matrix
from ..arith.rational import Q, qstr, to_q
from ..roots.points import RefinablePoint, mpoly_interval
from ..sa.formula import ComponentDescription
from .param import ChartFailure, DimensionError
from .partial import Chart, lift_vertex, partial_components


class RetryBudgetExhausted(RuntimeError):
    def __init__(self, prop: str, attempts: int):
        super().__init__(f"retry budget of {attempts} exhausted; last violated property: {prop}")
        self.prop = prop
        self.attempts = attempts


# -- regular sample points ------------------------------------------------------

def regular_points(chart: Chart):
    """{group index: ExactPoint} with one regular curve point per group that has edges."""
    out = {}
    for j, g in enumerate(chart.groups):
        if not g.edges:
            continue
        for key in g.vertices:
            v = chart.graph.vertex(key)
            if v.column.kind == "intermediate" and not v.tags:
                out[j] = lift_vertex(chart, key)
                break
        else:
            raise ChartFailure("regular points", "a component group has no rational-column vertex")
    return out


# -- failure points and their disjointness --------------------------------------

def _sqrt_interval(lo, hi, bits):
    def down(q):
        s = 1 << bits
        return Q(gmpy2.isqrt(gmpy2.mpz(gmpy2.floor(q * s * s))), s)

    def up(q):
        s = 1 << bits
        return Q(gmpy2.isqrt(gmpy2.mpz(gmpy2.ceil(q * s * s))) + 1, s)
    return down(lo), up(hi)


def _idiv(a, b):
    c = (a[0] / b[0], a[0] / b[1], a[1] / b[0], a[1] / b[1])
    return min(c), max(c)


def failure_points(chart: Chart):
    """The curve points above the crossings of chart's projection, as refinable points."""
    out = []
    if chart.param.s2 is None:
        return out
    s20, s21, s22 = chart.param.s2
    rows = chart.a.rows
    for key in chart.app.crunodes:
        pt = chart.graph.vertex(key).point
        for branch in (0, 1):
            out.append(RefinablePoint(_node_boxes(pt, s20, s21, s22, rows, branch)))
    return out


def _node_boxes(pt, s20, s21, s22, rows, branch):
    cache = {}

    def boxes(k):
        if k in cache:
            return cache[k]
        width = Q(1, 1 << (k + 6))
        while True:
            pt.refine(width)
            box = [pt.x_interval(), pt.y_interval()]
            a = mpoly_interval(s22, box)
            b = mpoly_interval(s21, box)
            c = mpoly_interval(s20, box)
            if a[0] <= 0 <= a[1]:
                width /= 4
                continue
            bb = (min(b[0] * b[0], b[1] * b[1]) if not b[0] <= 0 <= b[1] else Q(0), max(b[0] * b[0], b[1] * b[1]))
            ac = sorted([a[0] * c[0], a[0] * c[1], a[1] * c[0], a[1] * c[1]])
            disc = (bb[0] - 4 * ac[-1], bb[1] - 4 * ac[0])
            if disc[0] <= 0:
                width /= 4
                continue
            s = _sqrt_interval(disc[0], disc[1], k + 8)
            sign = -1 if branch == 0 else 1
            num = (-b[1] + sign * (s[1] if sign < 0 else s[0]), -b[0] + sign * (s[0] if sign < 0 else s[1]))
            den = (2 * a[0], 2 * a[1])
            y3 = _idiv(num, den)
            break
        y = [box[0], box[1], y3]
        xs = []
        for r in rows:
            lo = hi = Q(0)
            for cij, (l, h) in zip(r, y):
                if cij >= 0:
                    lo += cij * l
                    hi += cij * h
                else:
                    lo += cij * h
                    hi += cij * l
            xs.append((lo, hi))
        cache[k] = xs
        return xs
    return boxes


def _separated(p: RefinablePoint, q: RefinablePoint, levels: int) -> bool:
    for k in range(levels):
        bp, bq = p.boxes(k), q.boxes(k)
        if any(a[1] < b[0] or b[1] < a[0] for a, b in zip(bp, bq)):
            return True
    return False


def verify_disjoint_failure(chart1: Chart, chart2: Chart, levels: int = 24) -> bool:
    """True when no curve point lies above apparent singularities of both charts."""
    f1 = failure_points(chart1)
    f2 = failure_points(chart2)
    return all(_separated(p, q, levels) for p in f1 for q in f2)


# -- recombination ------------------------------------------------------------

def connect_params(samples, chart1: Chart, chart2: Chart):
    """Component descriptions: chart-1 groups united with the chart-2 group of their sample."""
    out = []
    used = {}
    for j, pieces in enumerate(chart1.pieces):
        extra = []
        if j in samples:
            m = chart2.group_of(samples[j])
            if m is None:
                raise ChartFailure("two-chart consistency", "a regular point lies in no chart-2 group")
            if m in used:
                raise ChartFailure("two-chart consistency", "two chart-1 groups meet one chart-2 group")
            used[m] = j
            extra = chart2.pieces[m]
        box = {}
        if j in samples:
            box = {"x": [[qstr(a), qstr(b)] for a, b in samples[j].box(Q(1, 1 << 20))]}
        out.append(ComponentDescription(j, list(pieces) + list(extra), 3, box))
    return out


@dataclass
class SpaceResult:
    components: list
    a1: SquareMatrix
    a2: SquareMatrix
    chart1: Chart
    chart2: Chart
    attempts: list = field(default_factory=list)   # (chart, property) of every rejected sample
    disjoint_first_try: bool = True


def matrix_bits(epsilon) -> int:
    eps = to_q(epsilon)
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    return math.ceil(math.log2(1 / float(eps))) + 8


def curve_components(system, epsilon=Q(1, 100), a1: SquareMatrix | None = None,
                     a2: SquareMatrix | None = None, seed: int = 0, budget: int = 8) -> SpaceResult:
    """Semi-algebraic descriptions of the connected components of V(system) in R^3."""
    if len(system) != 2 or any(g.n != 3 for g in system):
        raise DimensionError("expected two equations in x1, x2, x3")
    bits = matrix_bits(epsilon)
    rng = random.Random(seed)
    attempts = []

    def chart(fixed, tag):
        for _ in range(budget):
            m = fixed if fixed is not None else random_matrix(3, bits, rng)
            try:
                return partial_components(system, m, tag)
            except ChartFailure as exc:
                attempts.append((tag, exc.prop))
                if fixed is not None:
                    raise RetryBudgetExhausted(exc.prop, 1) from exc
        raise RetryBudgetExhausted(attempts[-1][1], budget)

    c1 = chart(a1, "A1 ")
    samples = regular_points(c1)
    first = True
    for _ in range(budget):
        c2 = chart(a2, "A2 ")
        if not verify_disjoint_failure(c1, c2):
            attempts.append(("A2 ", "disjoint failure sets"))
            first = False
            if a2 is not None:
                raise RetryBudgetExhausted("disjoint failure sets", 1)
            continue
        try:
            comps = connect_params(samples, c1, c2)
        except ChartFailure as exc:
            attempts.append(("A2 ", exc.prop))
            first = False
            if a2 is not None:
                raise RetryBudgetExhausted(exc.prop, 1) from exc
            continue
        return SpaceResult(comps, c1.a, c2.a, c1, c2, attempts, first)
    raise RetryBudgetExhausted("disjoint failure sets", budget)
