"""Real algebraic numbers given by a square-free polynomial and an isolating interval."""
from __future__ import annotations

from ..arith.rational import Q, ZERO, qstr, to_q
from ..arith.upoly import UPoly, poly_gcd, squarefree_factorization, squarefree_part
from .univariate import (
    int_coeffs,
    interval_eval,
    isolate_ints,
    refine_ints,
    refine_once,
    root_bound,
    sign_int_at,
    sturm_count_ints,
)


class NotCoprime(ValueError):
    def __init__(self, i, j):
        super().__init__(f"polynomials {i} and {j} share a root")
        self.pair = (i, j)


class RealAlgebraicNumber:
    """A root of the square-free ``poly`` inside ``[lo, hi]``.

    Either ``lo == hi`` (an exact rational) or ``poly`` changes sign on the open
    interval and has exactly one root there.  The number itself never changes,
    but the interval is tightened in place by sign computations.
    """

    __slots__ = ("poly", "lo", "hi", "mult", "_ints")

    def __init__(self, poly: UPoly, lo, hi, mult: int = 1, _ints=None):
        self.poly = poly
        self.lo = to_q(lo)
        self.hi = to_q(hi)
        self.mult = mult
        self._ints = _ints if _ints is not None else int_coeffs(poly)

    @classmethod
    def rational(cls, r) -> "RealAlgebraicNumber":
        r = to_q(r)
        return cls(UPoly((-r, 1)), r, r)

    # -- queries --------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    def value(self):
        if not self.is_rational:
            raise ValueError("not an exact rational")
        return self.lo

    def width(self):
        return self.hi - self.lo

    def midpoint(self):
        return (self.lo + self.hi) / 2

    def __float__(self):
        return float((self.lo + self.hi) / 2)

    def __repr__(self):
        if self.is_rational:
            return f"RAN({qstr(self.lo)})"
        return f"RAN({self.poly.to_str('x')}, [{qstr(self.lo)}, {qstr(self.hi)}])"

    def to_json(self):
        return {"poly": self.poly.to_str("x1"), "lo": qstr(self.lo), "hi": qstr(self.hi)}

    # -- refinement -----------------------------------------------------
    def _tighten(self, width):
        if self.is_rational or self.hi - self.lo <= width:
            return
        self.lo, self.hi = refine_ints(self._ints, self.lo, self.hi, width)

    def _halve(self):
        if not self.is_rational:
            self.lo, self.hi = refine_once(self._ints, self.lo, self.hi)

    def refine(self, width) -> "RealAlgebraicNumber":
        """A copy whose interval has width at most ``width``."""
        width = to_q(width)
        if width <= 0:
            raise ValueError("width must be positive")
        lo, hi = (self.lo, self.hi) if self.is_rational else refine_ints(self._ints, self.lo, self.hi, width)
        return RealAlgebraicNumber(self.poly, lo, hi, self.mult, self._ints)

    def copy(self) -> "RealAlgebraicNumber":
        return RealAlgebraicNumber(self.poly, self.lo, self.hi, self.mult, self._ints)

    # -- exact sign of g(self) ------------------------------------------
    def vanishes(self, g: UPoly) -> bool:
        if self.is_rational:
            return g(self.lo) == 0
        g = g % self.poly
        if not g:
            return True
        h = poly_gcd(self.poly, g)
        if h.degree < 1:
            return False
        # roots of h are roots of poly, so h has at most one root inside (lo, hi)
        ints = int_coeffs(h)
        return sign_int_at(ints, self.lo) != sign_int_at(ints, self.hi)

    def sign_of(self, g: UPoly) -> int:
        """Exact sign of g at this number."""
        if self.is_rational:
            v = g(self.lo)
            return (v > 0) - (v < 0)
        if g.degree >= self.poly.degree:
            g = g % self.poly
        if g.degree < 1:
            v = g.lc if g else ZERO
            return (v > 0) - (v < 0)
        if self.vanishes(g):
            return 0
        while True:
            a, b = interval_eval(g, self.lo, self.hi)
            if a > 0:
                return 1
            if b < 0:
                return -1
            self._halve()
            if self.is_rational:
                v = g(self.lo)
                return (v > 0) - (v < 0)

    def sign_of_ratio(self, num: UPoly, den: UPoly) -> int:
        sd = self.sign_of(den)
        if sd == 0:
            raise ZeroDivisionError("denominator vanishes at the algebraic number")
        return self.sign_of(num) * sd

    def enclose(self, g: UPoly, width=None):
        """Rational enclosure of g(self), optionally down to a given width."""
        if self.is_rational:
            v = g(self.lo)
            return v, v
        while True:
            a, b = interval_eval(g, self.lo, self.hi)
            if width is None or b - a <= width:
                return a, b
            self._halve()
            if self.is_rational:
                v = g(self.lo)
                return v, v

    # -- comparison -----------------------------------------------------
    def compare_rational(self, r) -> int:
        r = to_q(r)
        if self.is_rational:
            return (self.lo > r) - (self.lo < r)
        if r <= self.lo:
            return 1
        if r >= self.hi:
            return -1
        s = sign_int_at(self._ints, r)
        if s == 0:
            return 0
        return 1 if s == sign_int_at(self._ints, self.lo) else -1

    def compare(self, other: "RealAlgebraicNumber") -> int:
        return compare(self, other)

    def __lt__(self, other):
        return compare(self, other) < 0

    def __eq__(self, other):
        if not isinstance(other, RealAlgebraicNumber):
            return NotImplemented
        return compare(self, other) == 0

    __hash__ = None


def compare(a: RealAlgebraicNumber, b: RealAlgebraicNumber) -> int:
    """Exact comparison of two real algebraic numbers."""
    if a.is_rational:
        return -b.compare_rational(a.lo)
    if b.is_rational:
        return a.compare_rational(b.lo)
    if a.hi <= b.lo:
        return -1
    if b.hi <= a.lo:
        return 1
    g = poly_gcd(a.poly, b.poly)
    common = g.degree >= 1 and a.vanishes(g) and b.vanishes(g)
    gi = int_coeffs(g) if common else None
    while True:
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        if common:
            lo, hi = min(a.lo, b.lo), max(a.hi, b.hi)
            if sign_int_at(gi, lo) != 0 and sign_int_at(gi, hi) != 0 and sturm_count_ints(gi, lo, hi) == 1:
                return 0
        if a.width() >= b.width():
            a._halve()
            if a.is_rational:
                return -b.compare_rational(a.lo)
        else:
            b._halve()
            if b.is_rational:
                return a.compare_rational(b.lo)


def isolate_roots(p: UPoly):
    """Real roots of p (distinct, increasing), each tagged with its multiplicity."""
    if not p:
        raise ValueError("cannot isolate the roots of the zero polynomial")
    out = []
    for factor, mult in squarefree_factorization(p):
        ints = int_coeffs(factor)
        for lo, hi in isolate_ints(ints):
            if lo == hi:
                out.append(RealAlgebraicNumber(UPoly((-lo, 1)), lo, hi, mult))
            else:
                out.append(RealAlgebraicNumber(factor, lo, hi, mult, ints))
    _separate(out)
    out.sort(key=lambda r: r.lo)
    return out


def isolate_squarefree(p: UPoly):
    """Roots of a square-free polynomial, all sharing ``p`` as defining polynomial."""
    if p.degree < 1:
        return []
    ints = int_coeffs(p)
    out = []
    for lo, hi in isolate_ints(ints):
        out.append(RealAlgebraicNumber(p, lo, hi, 1, ints))
    return out


def _separate(roots):
    """Refine until consecutive intervals are strictly ordered (roots must be distinct)."""
    changed = True
    while changed:
        changed = False
        roots.sort(key=lambda r: (r.lo, r.hi))
        for r, s in zip(roots, roots[1:]):
            if r.hi < s.lo:
                continue
            if r.is_rational and s.is_rational:
                raise ValueError("duplicate root in separation")
            (r if r.width() >= s.width() else s)._halve()
            changed = True
            break  # the order may have changed


def separate_families(ps):
    """Isolate several pairwise coprime polynomials with mutually disjoint intervals."""
    ps = [squarefree_part(p) if p.degree >= 1 else p for p in ps]
    for i in range(len(ps)):
        for j in range(i + 1, len(ps)):
            if ps[i].degree >= 1 and ps[j].degree >= 1 and poly_gcd(ps[i], ps[j]).degree >= 1:
                raise NotCoprime(i, j)
    fams = [isolate_squarefree(p) for p in ps]
    flat = [r for fam in fams for r in fam]
    _separate(flat)
    return fams


def sturm_count(p: UPoly, lo, hi) -> int:
    """Distinct real roots of p in the open interval (lo, hi); endpoints must not be roots."""
    q = squarefree_part(p)
    ints = int_coeffs(q)
    lo, hi = to_q(lo), to_q(hi)
    if sign_int_at(ints, lo) == 0 or sign_int_at(ints, hi) == 0:
        raise ValueError("interval endpoint is a root")
    return sturm_count_ints(ints, lo, hi)


def refine(r: RealAlgebraicNumber, width) -> RealAlgebraicNumber:
    return r.refine(width)


def between(a: RealAlgebraicNumber, b: RealAlgebraicNumber):
    """A simple rational strictly between a < b (intervals already disjoint or exact)."""
    from ..arith.rational import simple_between
    while not a.hi < b.lo:
        if a.is_rational and b.is_rational:
            break
        (a if a.width() >= b.width() else b)._halve()
    lo = a.hi
    hi = b.lo
    if lo == hi:
        raise ValueError("numbers are not separated")
    return simple_between(lo, hi)


__all__ = [
    "RealAlgebraicNumber",
    "NotCoprime",
    "compare",
    "isolate_roots",
    "isolate_squarefree",
    "separate_families",
    "sturm_count",
    "refine",
    "root_bound",
    "between",
]
