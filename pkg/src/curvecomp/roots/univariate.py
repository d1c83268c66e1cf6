"""Sturm sequences and bisection over integer coefficient lists.

Polynomials are handled as integer lists (low degree first, gmpy2 ``mpz``) so
that all sign evaluations at rationals are pure integer work.
"""
from __future__ import annotations

from functools import lru_cache

import gmpy2

from ..arith.rational import ONE, Q, ZERO, simple_between, to_q
from ..arith.upoly import UPoly, poly_gcd, squarefree_factorization, squarefree_part

mpz = gmpy2.mpz


def int_coeffs(p: UPoly):
    _, ints = p.integer_primitive()
    return tuple(mpz(v) for v in ints)


def sign_int_at(a, x) -> int:
    """Sign of sum a_i x^i at rational x, with a an integer list."""
    x = to_q(x)
    n, d = x.numerator, x.denominator
    if d == 1:
        acc = mpz(0)
        for c in reversed(a):
            acc = acc * n + c
    else:
        # homogeneous Horner gives sum a_i n^i d^(deg-i), same sign as p(x) since d > 0
        acc = mpz(0)
        dpow = mpz(1)
        for c in reversed(a):
            acc = acc * n + c * dpow
            dpow *= d
    return (acc > 0) - (acc < 0)


def _iprem_neg(a, b):
    """-rem(a, b) up to a positive factor, integer lists."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    steps = 0
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        lr = r[-1]
        r = [v * lb for v in r]
        for j in range(db + 1):
            r[shift + j] -= lr * b[j]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        steps += 1
    # r = lb^steps * a  mod b; fix the sign so that r is a positive multiple of rem(a, b)
    if lb < 0 and steps % 2:
        r = [-v for v in r]
    r = [-v for v in r]
    if r:
        g = mpz(0)
        for v in r:
            g = gmpy2.gcd(g, v)
        r = [v // g for v in r]
    return r


@lru_cache(maxsize=4096)
def sturm_sequence(a: tuple):
    """Sturm chain of an integer polynomial (assumed square-free)."""
    p0 = list(a)
    p1 = [c * i for i, c in enumerate(a)][1:]
    seq = [tuple(p0)]
    if p1:
        seq.append(tuple(p1))
    while len(seq) >= 2 and len(seq[-1]) > 1:
        r = _iprem_neg(seq[-2], seq[-1])
        if not r:
            break
        seq.append(tuple(r))
    return tuple(seq)


def _variations(signs) -> int:
    v = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def _var_at(seq, x) -> int:
    return _variations([sign_int_at(p, x) for p in seq])


def _var_inf(seq, positive: bool) -> int:
    signs = []
    for p in seq:
        s = 1 if p[-1] > 0 else -1
        if not positive and (len(p) - 1) % 2:
            s = -s
        signs.append(s)
    return _variations(signs)


def sturm_count_ints(a, lo, hi) -> int:
    """Distinct real roots of a square-free integer polynomial in the half-open (lo, hi]."""
    seq = sturm_sequence(tuple(a))
    vlo = _var_inf(seq, False) if lo is None else _var_at(seq, lo)
    vhi = _var_inf(seq, True) if hi is None else _var_at(seq, hi)
    return vlo - vhi


def root_bound(p: UPoly):
    """Cauchy bound 1 + max|a_i|/|a_d|: every root lies in (-B, B)."""
    if p.degree < 1:
        raise ValueError("root bound needs degree >= 1")
    lc = abs(p.lc)
    return ONE + max(abs(c) for c in p.c[:-1]) / lc


def isolate_ints(a):
    """Isolating data for the real roots of a square-free integer polynomial.

    Returns a sorted list of (lo, hi) pairs: either lo == hi (an exact rational
    root) or an open interval with a sign change of the polynomial.
    """
    if len(a) <= 1:
        return []
    bound = root_bound(UPoly([Q(c) for c in a]))
    bound = Q(int(gmpy2.ceil(bound)))
    seq = sturm_sequence(tuple(a))
    out = []
    stack = [(-bound, bound, _var_at(seq, -bound), _var_at(seq, bound))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            if sign_int_at(a, hi) == 0:
                out.append((hi, hi))
            else:
                out.append(_tight_open(a, lo, hi))
            continue
        # a short rational from the middle half keeps the bisection logarithmic
        q = (hi - lo) / 4
        mid = simple_between(lo + q, hi - q)
        vm = _var_at(seq, mid)
        stack.append((lo, mid, vlo, vm))
        stack.append((mid, hi, vm, vhi))
    out.sort(key=lambda iv: iv[0])
    return out


def _tight_open(a, lo, hi):
    # the single root lies in (lo, hi]; hi is not a root.  Make lo not a root either.
    if sign_int_at(a, lo) == 0:
        # lo is a root of a, but it was not counted in (lo, hi]; push lo inward
        mid = (lo + hi) / 2
        while True:
            s_mid = sign_int_at(a, mid)
            s_hi = sign_int_at(a, hi)
            if s_mid == 0:
                return (mid, mid)
            if s_mid != s_hi:
                return (mid, hi)
            hi = mid
            mid = (lo + hi) / 2
    return (lo, hi)


def refine_ints(a, lo, hi, width):
    """Bisect a sign-change interval until hi - lo <= width."""
    if lo == hi:
        return lo, hi
    s_lo = sign_int_at(a, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sign_int_at(a, mid)
        if s == 0:
            return mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def refine_once(a, lo, hi):
    mid = (lo + hi) / 2
    s = sign_int_at(a, mid)
    if s == 0:
        return mid, mid
    if s == sign_int_at(a, lo):
        return mid, hi
    return lo, mid


def interval_eval(p: UPoly, lo, hi):
    """Enclosure of p over [lo, hi] by Horner's rule in interval arithmetic."""
    a_lo = a_hi = ZERO
    for c in reversed(p.c):
        cands = (a_lo * lo, a_lo * hi, a_hi * lo, a_hi * hi)
        a_lo = min(cands) + c
        a_hi = max(cands) + c
    return a_lo, a_hi


__all__ = [
    "int_coeffs",
    "sign_int_at",
    "sturm_sequence",
    "sturm_count_ints",
    "root_bound",
    "isolate_ints",
    "refine_ints",
    "refine_once",
    "interval_eval",
    "squarefree_part",
    "squarefree_factorization",
    "poly_gcd",
]
