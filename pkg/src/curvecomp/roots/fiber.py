"""Fibers of a bivariate polynomial over real algebraic abscissae.

Over an algebraic x = a the fiber F(a, y) is never formed explicitly.  Its
number of distinct real roots comes from the signs of signed subresultant
coefficients at a; a multiple root (at most one in generic coordinates) is a
rational function of a; simple roots are isolated by interval bisection in y
with a monotonicity certificate, refining a whenever boxes are inconclusive.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache
from math import comb

from ..arith.mpoly import MPoly, at_x1, from_x2_coeffs, x2_coeffs
from ..arith.rational import ONE, Q, ZERO, qstr, simple_between, to_q
from ..arith.subres import pmv, signed_subresultants
from ..arith.upoly import UPoly, poly_gcd, squarefree_part
from .algebraic import RealAlgebraicNumber, isolate_roots
from .univariate import interval_eval


class NotZeroDimensional(ValueError):
    def __init__(self, alpha):
        super().__init__(f"polynomial vanishes identically over x1 = {alpha!r}")
        self.alpha = alpha


class NonGenericFiber(ValueError):
    def __init__(self, alpha, reason="fiber has more than one multiple root"):
        super().__init__(f"{reason} over x1 = {alpha!r}")
        self.alpha = alpha


# -- cached polynomial data ---------------------------------------------------

@lru_cache(maxsize=512)
def _sres(f: MPoly, g: MPoly, full: bool):
    a, b = x2_coeffs(f), x2_coeffs(g)
    return signed_subresultants(a, b, UPoly(), UPoly.const(1), coefficients=full)


def _interval_mul(a, b):
    c = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(c), max(c)


def _horner_box(coeffs, ylo, yhi):
    """Enclosure of sum C_k y^k for interval coefficients C_k over y in [ylo, yhi].

    The plain interval Horner scheme is intersected with the centred form
    obtained by expanding around the midpoint; the latter stays tight when the
    monomial terms cancel.
    """
    lo = hi = ZERO
    for clo, chi in reversed(coeffs):
        lo, hi = _interval_mul((lo, hi), (ylo, yhi))
        lo, hi = lo + clo, hi + chi
    if ylo == yhi or len(coeffs) < 2:
        return lo, hi
    m = (ylo + yhi) / 2
    r = (yhi - ylo) / 2
    a = [list(c) for c in coeffs]
    n = len(a)
    shifted = []
    for k in range(n):
        # synthetic division by (y - m): the remainder is the k-th Taylor coefficient
        for i in range(n - 2, k - 1, -1):
            a[i][0] += m * a[i + 1][0] if m >= 0 else m * a[i + 1][1]
            a[i][1] += m * a[i + 1][1] if m >= 0 else m * a[i + 1][0]
        shifted.append(a[k])
    tail = ZERO
    rk = ONE
    for k in range(1, n):
        rk *= r
        tail += max(abs(shifted[k][0]), abs(shifted[k][1])) * rk
    tlo, thi = shifted[0][0] - tail, shifted[0][1] + tail
    return max(lo, tlo), min(hi, thi)


def _sign_box(coeffs, y):
    lo, hi = _horner_box(coeffs, y, y)
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return 0


class FiberData:
    """Per-polynomial cache: coefficients in x2 and signed subresultants with the derivative."""

    def __init__(self, f: MPoly):
        self.f = f
        self.coeffs = x2_coeffs(f)
        self.d = len(self.coeffs) - 1
        self.fy = f.deriv(1)
        self.dcoeffs = x2_coeffs(self.fy)
        self._sres = None

    def sres(self):
        if self._sres is None:
            self._sres = _sres(self.f, self.fy, True)
        return self._sres

    def effective_degree(self, alpha: RealAlgebraicNumber) -> int:
        for k in range(self.d, -1, -1):
            if not alpha.vanishes(self.coeffs[k]):
                return k
        return -1

    def real_root_count(self, alpha: RealAlgebraicNumber) -> int:
        """Number of distinct real roots of f(alpha, y)."""
        if alpha.is_rational:
            return len(isolate_roots(at_x1(self.f, alpha.lo))) if self.d > 0 else 0
        if self.d <= 0 or alpha.sign_of(self.coeffs[-1]) == 0:
            return _truncated(self.f, alpha).real_root_count(alpha)
        s = self.sres()
        signs = [alpha.sign_of(s[self.d][-1])]
        for j in range(self.d - 1, -1, -1):
            signs.append(alpha.sign_of(s[j][-1]))
        return pmv(signs)

    def gcd_degree(self, alpha: RealAlgebraicNumber) -> int:
        """Degree of gcd(f(alpha,y), f_y(alpha,y))."""
        s = self.sres()
        for j in range(self.d):
            if alpha.sign_of(s[j][-1]) != 0:
                return j
        return self.d - 1

    def multiple_root(self, alpha: RealAlgebraicNumber):
        """(num, den, e) with the unique multiple root y* = num(a)/den(a) of multiplicity e+1.

        Returns None when the fiber is square-free; raises NonGenericFiber when the
        gcd with the derivative has more than one distinct root.
        """
        e = self.gcd_degree(alpha)
        if e == 0:
            return None
        c = self.sres()[e]
        lead = c[e]
        num = -c[e - 1]
        den = lead * e
        for ell in range(e - 1):
            lhs = c[ell] * den ** (e - ell)
            rhs = lead * comb(e, ell) * (-num) ** (e - ell)
            if not alpha.vanishes(lhs - rhs):
                raise NonGenericFiber(alpha)
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exquo(g), den.exquo(g)
        return num % alpha.poly if not alpha.is_rational else num, den % alpha.poly if not alpha.is_rational else den, e


def _truncated(f: MPoly, alpha: RealAlgebraicNumber) -> FiberData:
    coeffs = x2_coeffs(f)
    while coeffs and alpha.vanishes(coeffs[-1]):
        coeffs.pop()
    if not coeffs:
        raise NotZeroDimensional(alpha)
    return FiberData(from_x2_coeffs(coeffs))


# -- points -------------------------------------------------------------------

class PlanePoint:
    """An exact real point (x, y) of a plane curve f = 0.

    ``x`` is a RealAlgebraicNumber.  ``y`` is described in one of three ways:

    * ``"root"``: x is rational and y is the RealAlgebraicNumber ``yr`` (a root of f(x, .));
    * ``"ratfun"``: y = num(x)/den(x) for polynomials num, den;
    * ``"box"``: y is the unique root of f(x, .) in the open interval (ylo, yhi)
      for every x in the interval of ``x``, certified by monotonicity.
    """

    __slots__ = ("f", "x", "kind", "yr", "num", "den", "ylo", "yhi", "mult")

    def __init__(self, f, x, kind, yr=None, num=None, den=None, ylo=None, yhi=None, mult=1):
        self.f = f
        self.x = x
        self.kind = kind
        self.yr = yr
        self.num = num
        self.den = den
        self.ylo = ylo
        self.yhi = yhi
        self.mult = mult

    def __repr__(self):
        lo, hi = self.y_interval()
        return f"PlanePoint(x~{float(self.x):.6g}, y in [{float(lo):.6g}, {float(hi):.6g}], m={self.mult})"

    # -- enclosures -----------------------------------------------------
    def y_interval(self):
        if self.kind == "root":
            return self.yr.lo, self.yr.hi
        if self.kind == "box":
            return self.ylo, self.yhi
        return _ratfun_enclosure(self.num, self.den, self.x)

    def x_interval(self):
        return self.x.lo, self.x.hi

    def refine(self, width):
        """Shrink both enclosures to width <= ``width`` (in place, value unchanged)."""
        width = to_q(width)
        while True:
            if self.x.width() > width:
                self.x._halve()
                continue
            if self.kind == "root":
                self.yr._tighten(width)
                return
            if self.kind == "ratfun":
                lo, hi = self.y_interval()
                if hi - lo <= width:
                    return
                self.x._halve()
                continue
            if self.yhi - self.ylo <= width:
                return
            if not self._bisect_box():
                self.x._halve()
                if self.x.is_rational:
                    self._to_root()

    def _box_coeffs(self, coeffs=None):
        xlo, xhi = self.x.lo, self.x.hi
        return [interval_eval(c, xlo, xhi) for c in (coeffs or x2_coeffs(self.f))]

    def _bisect_box(self) -> bool:
        cs = self._box_coeffs()
        s_lo = _sign_box(cs, self.ylo)
        if s_lo == 0:
            return False
        w = self.yhi - self.ylo
        for frac in (Q(1, 2), Q(3, 7), Q(4, 7)):
            mid = self.ylo + w * frac
            s_mid = _sign_box(cs, mid)
            if s_mid == 0:
                continue
            if s_mid == s_lo:
                self.ylo = mid
            else:
                self.yhi = mid
            return True
        return False

    def _to_root(self):
        r = self.x.lo
        for y in isolate_roots(at_x1(self.f, r)):
            if y.is_rational:
                if self.ylo < y.lo < self.yhi:
                    self.kind, self.yr = "root", y
                    return
                continue
            y = y.copy()
            while not (y.hi <= self.ylo or y.lo >= self.yhi):
                if y.lo >= self.ylo and y.hi <= self.yhi:
                    self.kind, self.yr = "root", y
                    return
                y._halve()
                if y.is_rational:
                    if self.ylo < y.lo < self.yhi:
                        self.kind, self.yr = "root", y
                        return
                    break
        raise AssertionError("lost the fiber root while refining")

    # -- exact signs ------------------------------------------------------
    def sign(self, p: MPoly) -> int:
        """Exact sign of the bivariate p at this point."""
        if self.kind == "root":
            return self.yr.sign_of(at_x1(p, self.x.lo))
        if self.kind == "ratfun":
            val, sden = ratfun_substitute(p, self.num, self.den)
            return self.x.sign_of(val) * sden(self.x)
        return _sign_box_point(self, p)

    def as_tuple_float(self):
        lo, hi = self.y_interval()
        return float(self.x), float((lo + hi) / 2)

    def box_json(self):
        self.refine(Q(1, 1 << 20))
        xlo, xhi = self.x_interval()
        ylo, yhi = self.y_interval()
        return {"x": [qstr(xlo), qstr(xhi)], "y": [qstr(ylo), qstr(yhi)]}


def ratfun_substitute(p: MPoly, num: UPoly, den: UPoly):
    """p(x, num/den) * den^deg as a UPoly, and a function giving the sign factor."""
    deg = p.degree(1)
    coeffs = x2_coeffs(p)
    acc = UPoly()
    for k, c in enumerate(coeffs):
        if c:
            acc = acc + c * num ** k * den ** (deg - k)

    def sden(x: RealAlgebraicNumber) -> int:
        if deg % 2 == 0:
            return 1
        s = x.sign_of(den)
        if s == 0:
            raise ZeroDivisionError("denominator vanishes")
        return s

    return acc, sden


def _ratfun_enclosure(num, den, x: RealAlgebraicNumber):
    while True:
        dlo, dhi = interval_eval(den, x.lo, x.hi)
        if dlo > 0 or dhi < 0:
            break
        x._halve()
    nlo, nhi = interval_eval(num, x.lo, x.hi)
    c = (nlo / dlo, nlo / dhi, nhi / dlo, nhi / dhi)
    return min(c), max(c)


def _sign_box_point(pt: PlanePoint, p: MPoly) -> int:
    f = pt.f
    d = f.degree(1)
    # reduce p modulo f in x2 (the leading coefficient of f in x2 is constant)
    pc = x2_coeffs(p)
    fc = x2_coeffs(f)
    lc = fc[-1]
    if lc.degree != 0:
        raise ValueError("box points need a constant leading coefficient in x2")
    inv = ONE / lc.lc
    while len(pc) - 1 >= d and pc:
        k = len(pc) - 1 - d
        t = pc[-1] * inv
        for i in range(d + 1):
            pc[k + i] = pc[k + i] - t * fc[i]
        pc.pop()
        while pc and not pc[-1]:
            pc.pop()
    if not pc:
        return 0
    if len(pc) == 1:
        return pt.x.sign_of(pc[0])
    red = from_x2_coeffs(pc)
    s = _sres(f, red, True)
    q = len(pc) - 1
    j0 = None
    for j in range(0, q + 1):
        if pt.x.sign_of(s[j][-1]) != 0:
            j0 = j
            break
    zero = False
    if j0 is None:
        zero = True
    elif j0 >= 1:
        g = from_x2_coeffs(s[j0])
        lo_s = pt.x.sign_of(at_x2(g, pt.ylo))
        hi_s = pt.x.sign_of(at_x2(g, pt.yhi))
        zero = lo_s != hi_s
    if zero:
        return 0
    while True:
        cs = pt._box_coeffs(x2_coeffs(p))
        lo, hi = _horner_box(cs, pt.ylo, pt.yhi)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        pt.refine(min(pt.x.width(), pt.yhi - pt.ylo) / 2)
        if pt.kind == "root":
            return pt.sign(p)


def at_x2(f: MPoly, r) -> UPoly:
    from ..arith.mpoly import at_x2 as _at_x2
    return _at_x2(f, r)


# -- fiber isolation over an algebraic abscissa ------------------------------

def _split(f, x, cs, c, d):
    """A short rational inside (c, d) that is not a root of f(x, .)."""
    q = (d - c) / 4
    lo, hi = c + q, d - q
    while True:
        m = simple_between(lo, hi)
        if _sign_box(cs, m) or not x.vanishes(at_x2(f, m)):
            return m
        lo = m


def _isolate_simple(f: MPoly, x: RealAlgebraicNumber, count: int, avoid=None, max_rounds: int = 400):
    """Boxes (ylo, yhi) isolating ``count`` simple roots of f(x, .), avoiding y* if given.

    Enclosures only get tighter as x shrinks, so certified and excluded boxes
    stay valid from one round to the next; only the undecided ones are kept.
    Many undecided boxes mean a root cluster that x is too coarse to resolve,
    and x is then refined much further before the boxes are split again.
    """
    coeffs = x2_coeffs(f)
    dcoeffs = x2_coeffs(f.deriv(1))
    tol = Q(1, 4)
    x._tighten(Q(1, 64))
    found = []
    pending = None
    for _ in range(max_rounds):
        if len(found) == count:
            break
        budget = 4000
        cs = [interval_eval(c, x.lo, x.hi) for c in coeffs]
        ds = [interval_eval(c, x.lo, x.hi) for c in dcoeffs]
        lclo, lchi = cs[-1]
        if lclo <= 0 <= lchi:
            x._halve()
            continue
        if pending is None:
            mlc = min(abs(lclo), abs(lchi))
            bound = ONE + max(max(abs(a), abs(b)) for a, b in cs[:-1]) / mlc if len(cs) > 1 else ONE
            pending = [(-Q(int(bound) + 1), Q(int(bound) + 1))]
        ystar = None
        if avoid is not None:
            ystar = _ratfun_enclosure(avoid[0], avoid[1], x)
        # breadth first, so that a root cluster cannot eat the whole budget
        queue = deque(pending)
        pending = []
        while queue and budget and len(found) < count:
            budget -= 1
            c, d = queue.popleft()
            if ystar is None or d < ystar[0] or c > ystar[1]:
                lo, hi = _horner_box(cs, c, d)
                if lo > 0 or hi < 0:
                    continue
                dlo, dhi = _horner_box(ds, c, d)
                if dlo > 0 or dhi < 0:
                    sc, sd = _sign_box(cs, c), _sign_box(cs, d)
                    if sc and sd and sc != sd:
                        found.append((c, d))
                        continue
            if d - c > tol:
                m = _split(f, x, cs, c, d)
                queue += [(c, m), (m, d)]
            else:
                pending.append((c, d))
        pending.extend(queue)
        if len(found) > count:
            raise AssertionError("more certified roots than the exact count")
        # x shrinks faster than the boxes, so that sign tests at box ends
        # eventually outrun the uncertainty coming from x
        for _ in range(8 if len(pending) > 24 else 4):
            x._halve()
        if len(pending) <= 24:
            tol /= 4
    # certified boxes are disjoint and each holds one root: the exact count
    # says there are no others, whatever is still undecided
    if len(found) == count:
        return sorted(found)
    raise RuntimeError("fiber isolation did not converge")


def fiber_points(f: MPoly, x: RealAlgebraicNumber, data: FiberData | None = None):
    """All distinct real points of f = 0 over x, sorted by y."""
    if x.is_rational:
        fib = at_x1(f, x.lo)
        if not fib:
            raise NotZeroDimensional(x)
        return [PlanePoint(f, x, "root", yr=y, mult=y.mult) for y in isolate_roots(fib)] if fib.degree > 0 else []
    if data is None:
        data = FiberData(f)
    if data.d <= 0:
        if alpha_vanishes_all(f, x):
            raise NotZeroDimensional(x)
        return []
    if x.sign_of(data.coeffs[-1]) == 0:
        data = _truncated(f, x)
        f = data.f
    n = data.real_root_count(x)
    mr = data.multiple_root(x)
    if mr is None:
        boxes = _isolate_simple(f, x, n)
        return [PlanePoint(f, x, "box", ylo=a, yhi=b) for a, b in boxes]
    num, den, e = mr
    boxes = _isolate_simple(f, x, n - 1, avoid=(num, den))
    star = PlanePoint(f, x, "ratfun", num=num, den=den, mult=e + 1)
    ylo, yhi = _ratfun_enclosure(num, den, x)
    pts = []
    placed = False
    for a, b in boxes:
        if not placed and a > yhi:
            pts.append(star)
            placed = True
        pts.append(PlanePoint(f, x, "box", ylo=a, yhi=b))
    if not placed:
        pts.append(star)
    return pts


def isolating_real_sol(r: UPoly, f: MPoly):
    """Real solutions of {r(x1) = 0, f(x1, x2) = 0}.

    With f identically zero the solutions are the roots of r themselves and
    their abscissae are returned as RealAlgebraicNumbers.  Otherwise every
    fiber must be finite and the result is a list of PlanePoints sorted by x1
    then x2.
    """
    if not r:
        raise NotZeroDimensional(None)
    if r.degree < 1:
        return []
    xs = isolate_roots(squarefree_part(r))
    if not f:
        return xs
    data = FiberData(f) if f.degree(1) > 0 else None
    out = []
    for x in xs:
        if data is None:
            if x.vanishes(x2_coeffs(f)[0]):
                raise NotZeroDimensional(x)
            continue
        out.extend(fiber_points(f, x, data))
    return out


def alpha_vanishes_all(f: MPoly, x: RealAlgebraicNumber) -> bool:
    return all(x.vanishes(c) for c in x2_coeffs(f))


__all__ = [
    "FiberData",
    "PlanePoint",
    "fiber_points",
    "isolating_real_sol",
    "ratfun_substitute",
    "NotZeroDimensional",
    "NonGenericFiber",
]
