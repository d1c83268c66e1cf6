"""Points in R^n usable by semi-algebraic formulas.

Every class exposes ``sign(p: MPoly) -> int``.  ``ExactPoint`` is exact: its
coordinates are rational functions of a single real algebraic number.
``RefinablePoint`` only knows shrinking boxes; equations it cannot refute
after the precision budget are reported as holding.
"""
from __future__ import annotations

from ..arith.mpoly import MPoly
from ..arith.rational import ONE, Q, ZERO, qstr, to_q
from ..arith.upoly import UPoly
from .algebraic import RealAlgebraicNumber
from .univariate import interval_eval


def _imul(a, b):
    c = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(c), max(c)


def _ipow(a, k):
    r = (ONE, ONE)
    for _ in range(k):
        r = _imul(r, a)
    if k % 2 == 0 and a[0] < 0 < a[1]:
        r = (ZERO, r[1])
    return r


def mpoly_interval(p: MPoly, box):
    """Enclosure of p over a box given as [(lo, hi), ...]."""
    lo = hi = ZERO
    for e, c in p.terms.items():
        t = (c, c)
        for i, k in enumerate(e):
            if k:
                t = _imul(t, _ipow(box[i], k))
        lo += t[0]
        hi += t[1]
    return lo, hi


class ExactPoint:
    """The point (nums[0](eta), ..., nums[n-1](eta)) / den(eta) for a real algebraic eta."""

    def __init__(self, eta: RealAlgebraicNumber, nums, den: UPoly | None = None):
        self.eta = eta
        self.nums = [n if isinstance(n, UPoly) else UPoly.const(n) for n in nums]
        self.den = den if den is not None else UPoly.const(1)
        if eta.sign_of(self.den) == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        self._dsign = eta.sign_of(self.den)

    @property
    def n(self) -> int:
        return len(self.nums)

    @classmethod
    def rational(cls, coords):
        coords = [to_q(c) for c in coords]
        return cls(RealAlgebraicNumber.rational(0), [UPoly.const(c) for c in coords])

    def cleared(self, p: MPoly) -> UPoly:
        """p(point) * den^deg(p) as a polynomial in eta."""
        deg = max(p.total_degree(), 0)
        dpow = [UPoly.const(1)]
        for _ in range(deg):
            dpow.append(dpow[-1] * self.den)
        npow = [dict() for _ in self.nums]
        acc = UPoly()
        for e, c in p.terms.items():
            t = dpow[deg - sum(e)] * c
            for i, k in enumerate(e):
                if k:
                    if k not in npow[i]:
                        npow[i][k] = self.nums[i] ** k
                    t = t * npow[i][k]
            acc = acc + t
        return acc

    def sign(self, p: MPoly) -> int:
        s = self.eta.sign_of(self.cleared(p))
        if s and self._dsign < 0 and p.total_degree() % 2:
            return -s
        return s

    def box(self, width=Q(1, 1 << 30)):
        width = to_q(width)
        while True:
            d = interval_eval(self.den, self.eta.lo, self.eta.hi)
            if d[0] > 0 or d[1] < 0:
                out = []
                for num in self.nums:
                    a = interval_eval(num, self.eta.lo, self.eta.hi)
                    c = (a[0] / d[0], a[0] / d[1], a[1] / d[0], a[1] / d[1])
                    out.append((min(c), max(c)))
                if all(b - a <= width for a, b in out) or self.eta.is_rational:
                    return out
            self.eta._halve()

    def approx(self):
        return [float((a + b) / 2) for a, b in self.box(Q(1, 1 << 40))]

    def to_json(self):
        return {"box": [[qstr(a), qstr(b)] for a, b in self.box()]}


class RefinablePoint:
    """A point known through a function ``boxes(k)`` returning ever tighter boxes.

    ``boxes(k)`` must return a list of (lo, hi) rational pairs containing the
    point, shrinking to it as k grows.
    """

    def __init__(self, boxes, max_level: int = 40):
        self.boxes = boxes
        self.max_level = max_level

    def sign(self, p: MPoly) -> int:
        for k in range(self.max_level):
            lo, hi = mpoly_interval(p, self.boxes(k))
            if lo > 0:
                return 1
            if hi < 0:
                return -1
        return 0

    def approx(self):
        return [float((a + b) / 2) for a, b in self.boxes(self.max_level // 2)]
