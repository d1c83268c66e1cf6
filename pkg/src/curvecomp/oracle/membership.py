"""Direct truth evaluation of serialised semi-algebraic formulas.

Formulas are read from their JSON form with an independent parser, and
evaluated with Fraction arithmetic at rational points.  Points known only
through shrinking boxes are handled by interval evaluation; an atom whose
sign stays undecided at the finest box is taken to vanish, unless the point
can give its exact sign.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy as sp

_SYMS = sp.symbols("x1:10")
_T = sp.Symbol("t")


@lru_cache(maxsize=4096)
def _terms(text: str, nvars: int):
    expr = sp.sympify(text.replace("^", "**"), locals={str(s): s for s in _SYMS[:nvars]})
    poly = sp.Poly(expr, *_SYMS[:nvars])
    return tuple((m, Fraction(int(c.p), int(c.q))) for m, c in poly.terms())


@lru_cache(maxsize=1024)
def _uterms(text: str):
    poly = sp.Poly(sp.sympify(text.replace("^", "**"), locals={"t": _T}), _T)
    return tuple((m[0], Fraction(int(c.p), int(c.q))) for m, c in poly.terms())


def _value(terms, point):
    acc = Fraction(0)
    for m, c in terms:
        t = c
        for x, k in zip(point, m):
            if k:
                t *= x ** k
        acc += t
    return acc


def _uvalue(terms, x):
    return sum((c * x ** k for k, c in terms), Fraction(0))


def _sign(v) -> int:
    return (v > 0) - (v < 0)


# -- interval helpers -----------------------------------------------------------

def _imul(a, b):
    c = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(c), max(c)


def _ipow(a, k):
    r = (Fraction(1), Fraction(1))
    for _ in range(k):
        r = _imul(r, a)
    if k % 2 == 0 and a[0] < 0 < a[1]:
        r = (Fraction(0), r[1])
    return r


def _ivalue(terms, box):
    lo = hi = Fraction(0)
    for m, c in terms:
        t = (c, c)
        for iv, k in zip(box, m):
            if k:
                t = _imul(t, _ipow(iv, k))
        lo += t[0]
        hi += t[1]
    return lo, hi


def _uivalue(terms, iv):
    lo = hi = Fraction(0)
    for k, c in terms:
        t = _imul((c, c), _ipow(iv, k))
        lo += t[0]
        hi += t[1]
    return lo, hi


# -- points ------------------------------------------------------------------

class _Rational:
    def __init__(self, coords):
        self.coords = tuple(Fraction(str(c)) for c in coords)

    def boxes(self):
        yield [(c, c) for c in self.coords]


class _Boxed:
    def __init__(self, point, levels):
        self.point = point
        self.levels = levels

    def boxes(self):
        for k in range(self.levels):
            if hasattr(self.point, "boxes"):
                b = self.point.boxes(k)
            else:
                b = self.point.box(Fraction(1, 1 << (4 * k + 8)))
            yield [(Fraction(str(lo)), Fraction(str(hi))) for lo, hi in b]


def _wrap(point, levels):
    if isinstance(point, (tuple, list)):
        return _Rational(point)
    return _Boxed(point, levels)


def _sign_at(terms, pt, text=None, nvars=None) -> int:
    for box in pt.boxes():
        lo, hi = _ivalue(terms, box)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if lo == hi == 0:
            return 0
    exact = getattr(getattr(pt, "point", None), "cleared", None)
    if exact is not None and text is not None:
        # the point is exact: settle the remaining case without boxes
        from ..arith.parse import parse_poly
        return pt.point.sign(parse_poly(text, nvars))
    return 0


def _compare(terms, bound, pt) -> int:
    """Sign of p(point) - bound."""
    if isinstance(bound, str):
        b = Fraction(bound)
        shifted = terms + ((tuple(0 for _ in terms[0][0]) if terms else (), -b),)
        return _sign_at(shifted, pt)
    lo, hi = Fraction(bound["lo"]), Fraction(bound["hi"])
    m = _uterms(bound["root_of"])
    hi_sign = _sign(_uvalue(m, hi))
    for box in pt.boxes():
        v = _ivalue(terms, box)
        if v[1] <= lo:
            return -1
        if v[0] >= hi:
            return 1
        if lo < v[0] and v[1] < hi:
            mlo, mhi = _uivalue(m, v)
            if mlo > 0 or mhi < 0:
                return 1 if (1 if mlo > 0 else -1) == hi_sign else -1
            if v[0] == v[1] and _uvalue(m, v[0]) == 0:
                return 0
    return 0


def _atom_holds(atom, pt, nvars) -> bool:
    terms = _terms(atom["poly"], nvars)
    kind = atom["kind"]
    if kind == "range":
        if not terms:
            terms = (((0,) * nvars, Fraction(0)),)
        if atom.get("lo") is not None and _compare(terms, atom["lo"], pt) <= 0:
            return False
        if atom.get("hi") is not None and _compare(terms, atom["hi"], pt) >= 0:
            return False
        return True
    s = _sign_at(terms, pt, atom["poly"], nvars)
    return {"eq": s == 0, "gt": s > 0, "lt": s < 0}[kind]


def _as_json(desc):
    if not hasattr(desc, "to_json"):
        return desc
    if hasattr(desc, "pieces"):
        return desc.to_json()
    return desc.to_json([f"x{i + 1}" for i in range(9)])


def sa_membership(desc, point, nvars: int | None = None, levels: int = 40) -> bool:
    """Truth value of a conjunction (or a disjunction of conjunctions) at a point.

    ``desc`` is an SADescription, a ComponentDescription, or their JSON form.
    ``point`` is a sequence of rationals or an object exposing ``boxes(k)`` or
    ``box(width)``.
    """
    obj = _as_json(desc)
    if "pieces" in obj:
        n = obj.get("nvars", nvars or 2)
        return any(sa_membership(p, point, n, levels) for p in obj["pieces"])
    if nvars is None:
        nvars = len(point) if isinstance(point, (tuple, list)) else 2
    pt = _wrap(point, levels)
    return all(_atom_holds(a, pt, nvars) for a in obj.get("atoms", ()))
