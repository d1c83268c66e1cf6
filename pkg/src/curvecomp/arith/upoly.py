"""Dense univariate polynomials over Q.

Coefficients are stored lowest degree first, with no trailing zeros; the zero
polynomial has an empty coefficient tuple.
"""
from __future__ import annotations

from functools import reduce
from math import gcd as igcd

import gmpy2

from .rational import ONE, Q, ZERO, qstr, to_q

mpz = gmpy2.mpz


class UPoly:
    __slots__ = ("c", "_hash")

    def __init__(self, coeffs=()):
        c = [to_q(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)
        self._hash = None

    @classmethod
    def _raw(cls, c):
        # trusted constructor: c is a list of mpq, may have trailing zeros
        while c and c[-1] == 0:
            c.pop()
        p = cls.__new__(cls)
        p.c = tuple(c)
        p._hash = None
        return p

    @classmethod
    def const(cls, a):
        return cls((a,))

    @classmethod
    def x(cls):
        return cls._raw([ZERO, ONE])

    @classmethod
    def from_roots(cls, roots):
        p = cls.const(1)
        for r in roots:
            p = p * cls((-to_q(r), 1))
        return p

    # -- basic queries --------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1] if self.c else ZERO

    def is_zero(self) -> bool:
        return not self.c

    def is_const(self) -> bool:
        return len(self.c) <= 1

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.c == other.c
        if isinstance(other, (int, type(ZERO))):
            return self.c == UPoly.const(other).c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.c)
        return self._hash

    def __repr__(self):
        return f"UPoly({self.to_str('x')})"

    def to_str(self, var="x") -> str:
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if i == 0:
                body = qstr(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{qstr(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, UPoly):
            return other
        return UPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, v in enumerate(b):
            c[i] = c[i] + v
        return UPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return UPoly._raw([-v for v in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            s = to_q(other)
            if s == 0:
                return UPoly()
            return UPoly._raw([v * s for v in self.c])
        a, b = self.c, other.c
        if not a or not b:
            return UPoly()
        c = [ZERO] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u == 0:
                continue
            for j, v in enumerate(b):
                c[i + j] += u * v
        return UPoly._raw(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = UPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, s):
        return self * s

    def divmod(self, other: "UPoly"):
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.c)
        db = other.degree
        if len(r) - 1 < db:
            return UPoly(), self
        inv = ONE / other.lc
        b = other.c
        q = [ZERO] * (len(r) - db)
        for i in range(len(r) - 1 - db, -1, -1):
            coef = r[i + db] * inv
            q[i] = coef
            if coef != 0:
                for j in range(db + 1):
                    r[i + j] -= coef * b[j]
        return UPoly._raw(q), UPoly._raw(r[:db])

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def exquo(self, other):
        if not isinstance(other, UPoly):
            return self * (ONE / to_q(other))
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "UPoly") -> bool:
        return not (other % self)

    # -- evaluation and calculus ---------------------------------------
    def __call__(self, x):
        acc = ZERO
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def eval_poly(self, p: "UPoly") -> "UPoly":
        """Composition self(p)."""
        acc = UPoly()
        for a in reversed(self.c):
            acc = acc * p + a
        return acc

    def deriv(self, k: int = 1) -> "UPoly":
        c = list(self.c)
        for _ in range(k):
            c = [c[i] * i for i in range(1, len(c))]
        return UPoly._raw(c)

    def shift(self, s) -> "UPoly":
        """p(x + s)."""
        return self.eval_poly(UPoly((s, 1)))

    def sign_at(self, x) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    # -- normalisation --------------------------------------------------
    def monic(self) -> "UPoly":
        if not self.c:
            return self
        return self * (ONE / self.lc)

    def integer_primitive(self):
        """Return (content, list of ints) with self = content * sum(ints[i] x^i)."""
        if not self.c:
            return ZERO, []
        den = reduce(lambda a, b: a * b // igcd(a, b), (int(v.denominator) for v in self.c), 1)
        ints = [int(v * den) for v in self.c]
        g = reduce(igcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return Q(g, den), [v // g for v in ints]

    def primitive(self) -> "UPoly":
        """Integer primitive part with positive leading coefficient."""
        _, ints = self.integer_primitive()
        return UPoly._raw([Q(v) for v in ints])


def _int_prem(a, b):
    # pseudo-remainder of integer coefficient lists (low first)
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        lr = r[-1]
        r = [v * lb for v in r]
        for j in range(db + 1):
            r[shift + j] -= lr * b[j]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def _int_primitive(r):
    g = reduce(igcd, r, 0)
    if g == 0:
        return r
    if r[-1] < 0:
        g = -g
    return [v // g for v in r]


def _int_prem_exact(a, b):
    # prem with the full factor lc(b)^(deg a - deg b + 1)
    steps = len(a) - len(b) + 1
    lb = b[-1]
    r = list(a)
    db = len(b) - 1
    done = 0
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        lr = r[-1]
        r = [v * lb for v in r]
        for j in range(db + 1):
            r[shift + j] -= lr * b[j]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        done += 1
    if done < steps and r:
        f = lb ** (steps - done)
        r = [v * f for v in r]
    return r


def poly_gcd(p: UPoly, q: UPoly) -> UPoly:
    """Monic gcd, computed by the subresultant remainder sequence over Z."""
    if not p:
        return q.monic()
    if not q:
        return p.monic()
    if p.degree == 0 or q.degree == 0:
        return UPoly.const(1)
    _, a = p.integer_primitive()
    _, b = q.integer_primitive()
    if len(a) < len(b):
        a, b = b, a
    g = h = mpz(1)
    while True:
        delta = len(a) - len(b)
        r = _int_prem_exact(a, b)
        if not r:
            break
        if len(r) == 1:
            return UPoly.const(1)
        div = g * h ** delta
        a, b = b, [v // div for v in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g ** delta // h ** (delta - 1)
    return UPoly._raw([Q(v) for v in _int_primitive(b)]).monic()


def poly_xgcd(p: UPoly, q: UPoly):
    """(g, s, t) with s*p + t*q = g monic."""
    r0, r1 = p, q
    s0, s1 = UPoly.const(1), UPoly()
    t0, t1 = UPoly(), UPoly.const(1)
    while r1:
        quo, rem = r0.divmod(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if not r0:
        return r0, s0, t0
    inv = ONE / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_part(p: UPoly) -> UPoly:
    if not p:
        raise ValueError("square-free part of the zero polynomial")
    if p.degree <= 0:
        return UPoly.const(1)
    g = poly_gcd(p, p.deriv())
    return p.exquo(g).monic()


def squarefree_factorization(p: UPoly):
    """Yun's algorithm: list of (factor, multiplicity), factors monic, non-constant."""
    if not p:
        raise ValueError("square-free factorization of the zero polynomial")
    out = []
    if p.degree <= 0:
        return out
    p = p.monic()
    dp = p.deriv()
    a = poly_gcd(p, dp)
    b = p.exquo(a)
    c = dp.exquo(a)
    d = c - b.deriv()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exquo(a)
        c = d.exquo(a)
        d = c - b.deriv()
        i += 1
    return out


def lcm_den(values) -> int:
    return reduce(lambda a, b: a * b // igcd(a, b), (int(to_q(v).denominator) for v in values), 1)


def bit_height(p: UPoly) -> int:
    if not p:
        return 0
    return max(max(int(gmpy2.bit_length(v.numerator)), int(gmpy2.bit_length(v.denominator))) for v in p.c)
