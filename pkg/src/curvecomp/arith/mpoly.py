"""Sparse multivariate polynomials over Q in variables x1 .. xn.

A bivariate polynomial is simply an ``MPoly`` with ``nvars == 2``; helpers at
the bottom give the recursive view Q[x1][x2] used by the plane algorithms.
"""
from __future__ import annotations

from .rational import ONE, ZERO, qstr, to_q
from .upoly import UPoly


class MPoly:
    __slots__ = ("n", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.n = nvars
        t = {}
        if terms:
            for e, a in terms.items():
                a = to_q(a)
                if a != 0:
                    e = tuple(e)
                    if len(e) != nvars:
                        raise ValueError("exponent length does not match variable count")
                    t[e] = a
        self.terms = t
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.n = nvars
        p.terms = {e: a for e, a in terms.items() if a != 0}
        p._hash = None
        return p

    @classmethod
    def const(cls, nvars, a):
        return cls(nvars, {(0,) * nvars: a})

    @classmethod
    def var(cls, nvars, i):
        """The variable x_{i+1} (0-based index ``i``)."""
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): ONE})

    # -- queries ----------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_const(self):
        return all(sum(e) == 0 for e in self.terms)

    def const_value(self):
        return self.terms.get((0,) * self.n, ZERO)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, type(ZERO))):
            return self == MPoly.const(self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MPoly({self.to_str()})"

    def to_str(self, names=None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.n)]
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), [-v for v in kv[0]]))
        out = ""
        for idx, (e, a) in enumerate(items):
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            mag = abs(a)
            if not mono:
                body = qstr(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{qstr(mag)}*{mono}"
            if idx == 0:
                out = ("-" if a < 0 else "") + body
            else:
                out += (" - " if a < 0 else " + ") + body
        return out

    __str__ = to_str

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.n != self.n:
                raise ValueError("variable count mismatch")
            return other
        return MPoly.const(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, a in other.terms.items():
            t[e] = t.get(e, ZERO) + a
        return MPoly._raw(self.n, t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.n, {e: -a for e, a in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            s = to_q(other)
            return MPoly._raw(self.n, {e: a * s for e, a in self.terms.items()})
        if other.n != self.n:
            raise ValueError("variable count mismatch")
        t = {}
        for e1, a1 in self.terms.items():
            for e2, a2 in other.terms.items():
                e = tuple(u + v for u, v in zip(e1, e2))
                t[e] = t.get(e, ZERO) + a1 * a2
        return MPoly._raw(self.n, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = MPoly.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def leading(self):
        """Lex-leading (exponent, coefficient)."""
        e = max(self.terms)
        return e, self.terms[e]

    def exquo(self, other):
        """Exact division; raises if ``other`` does not divide ``self``."""
        if not isinstance(other, MPoly):
            return self * (ONE / to_q(other))
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        el, al = other.leading()
        rem = dict(self.terms)
        quo = {}
        inv = ONE / al
        while rem:
            e = max(rem)
            a = rem[e]
            d = tuple(u - v for u, v in zip(e, el))
            if any(v < 0 for v in d):
                raise ArithmeticError("inexact polynomial division")
            coef = a * inv
            quo[d] = coef
            for e2, a2 in other.terms.items():
                k = tuple(u + v for u, v in zip(d, e2))
                val = rem.get(k, ZERO) - coef * a2
                if val == 0:
                    rem.pop(k, None)
                else:
                    rem[k] = val
        return MPoly._raw(self.n, quo)

    # -- calculus / evaluation -----------------------------------------
    def deriv(self, i: int, k: int = 1) -> "MPoly":
        t = {}
        for e, a in self.terms.items():
            if e[i] < k:
                continue
            f = 1
            for j in range(k):
                f *= e[i] - j
            e2 = list(e)
            e2[i] -= k
            t[tuple(e2)] = a * f
        return MPoly._raw(self.n, t)

    def __call__(self, *point):
        acc = ZERO
        for e, a in self.terms.items():
            v = a
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            acc += v
        return acc

    def substitute(self, i: int, value) -> "MPoly":
        """Replace x_{i+1} by a rational, keeping the variable count."""
        value = to_q(value)
        t = {}
        for e, a in self.terms.items():
            e2 = list(e)
            k = e2[i]
            e2[i] = 0
            e2 = tuple(e2)
            t[e2] = t.get(e2, ZERO) + a * value ** k
        return MPoly._raw(self.n, t)

    def compose(self, images) -> "MPoly":
        """Substitute x_i -> images[i]; images are MPolys sharing one variable count."""
        m = images[0].n
        cache = [dict() for _ in range(self.n)]

        def power(i, k):
            if k not in cache[i]:
                cache[i][k] = images[i] ** k
            return cache[i][k]

        acc = MPoly(m)
        for e, a in self.terms.items():
            term = MPoly.const(m, a)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    def embed(self, nvars: int, positions=None) -> "MPoly":
        """View as a polynomial in ``nvars`` variables (variable i -> positions[i])."""
        if positions is None:
            positions = list(range(self.n))
        t = {}
        for e, a in self.terms.items():
            e2 = [0] * nvars
            for i, k in enumerate(e):
                e2[positions[i]] += k
            t[tuple(e2)] = a
        return MPoly._raw(nvars, t)

    def drop_last(self) -> "MPoly":
        """Forget a last variable that does not occur."""
        if self.degree(self.n - 1) > 0:
            raise ValueError("last variable occurs")
        return MPoly._raw(self.n - 1, {e[:-1]: a for e, a in self.terms.items()})

    def coeffs_in(self, i: int):
        """Coefficient list (low first) with respect to x_{i+1}, entries MPoly in the rest."""
        d = self.degree(i)
        out = [dict() for _ in range(max(d + 1, 0))]
        for e, a in self.terms.items():
            e2 = e[:i] + e[i + 1:]
            out[e[i]][e2] = a
        return [MPoly._raw(self.n - 1, t) for t in out]

    @classmethod
    def from_coeffs_in(cls, coeffs, i: int, nvars: int):
        t = {}
        for k, c in enumerate(coeffs):
            for e, a in c.terms.items():
                t[e[:i] + (k,) + e[i:]] = a
        return cls._raw(nvars, t)


# -- bivariate helpers ------------------------------------------------------

def to_upoly(p: MPoly, i: int = 0) -> UPoly:
    """A polynomial that only involves x_{i+1}, as a UPoly."""
    c = {}
    for e, a in p.terms.items():
        if any(k for j, k in enumerate(e) if j != i):
            raise ValueError("polynomial involves other variables")
        c[e[i]] = a
    return UPoly([c.get(k, ZERO) for k in range(max(c, default=-1) + 1)])


def from_upoly(p: UPoly, nvars: int, i: int = 0) -> MPoly:
    t = {}
    for k, a in enumerate(p.c):
        e = [0] * nvars
        e[i] = k
        t[tuple(e)] = a
    return MPoly._raw(nvars, t)


def x2_coeffs(f: MPoly):
    """Q[x1][x2] view of a bivariate polynomial: UPoly coefficients of x2^k."""
    if f.n != 2:
        raise ValueError("expected a bivariate polynomial")
    d = f.degree(1)
    rows = [dict() for _ in range(max(d + 1, 0))]
    for (e1, e2), a in f.terms.items():
        rows[e2][e1] = a
    return [UPoly([r.get(k, ZERO) for k in range(max(r, default=-1) + 1)]) for r in rows]


def from_x2_coeffs(coeffs) -> MPoly:
    t = {}
    for k, c in enumerate(coeffs):
        for j, a in enumerate(c.c):
            t[(j, k)] = a
    return MPoly._raw(2, t)


def at_x1(f: MPoly, r) -> UPoly:
    """The fiber polynomial f(r, x2) for rational r."""
    return UPoly([c(to_q(r)) for c in x2_coeffs(f)])


def at_x2(f: MPoly, r) -> UPoly:
    r = to_q(r)
    d = f.degree(0)
    c = [ZERO] * (d + 1)
    for (e1, e2), a in f.terms.items():
        c[e1] += a * r ** e2
    return UPoly(c)
