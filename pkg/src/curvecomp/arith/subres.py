"""Subresultant remainder sequences over an integral domain.

Polynomials are coefficient lists (low degree first) whose entries are ring
elements: ``mpq``, ``UPoly`` or ``MPoly``.  The ring only needs ``+ - *``,
truthiness for zero tests and exact division (``exquo``).
"""
from __future__ import annotations

from .mpoly import MPoly, from_upoly, to_upoly, x2_coeffs
from .rational import ONE, Q
from .upoly import UPoly, poly_gcd, squarefree_part


def _exq(a, b):
    if isinstance(a, (UPoly, MPoly)):
        return a.exquo(b)
    return a / b


def _strip(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _deg(p):
    return len(p) - 1


def _lc(p):
    return p[-1]


def _mul_ground(p, c):
    return _strip([a * c for a in p])


def _sub(p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        if i < len(p) and i < len(q):
            out.append(p[i] - q[i])
        elif i < len(p):
            out.append(p[i])
        else:
            out.append(-q[i])
    return _strip(out)


def prem(f, g):
    """Pseudo-remainder lc(g)^(deg f - deg g + 1) * f mod g."""
    df, dg = _deg(f), _deg(g)
    if df < dg:
        return list(f)
    n = df - dg + 1
    lc_g = _lc(g)
    r, dr = list(f), df
    while True:
        lc_r = _lc(r)
        j = dr - dg
        n -= 1
        shifted = [lc_r * 0] * j + [lc_r * c for c in g]
        r = _sub(_mul_ground(r, lc_g), shifted)
        prev, dr = dr, _deg(r)
        if dr < dg:
            break
        if not dr < prev:
            raise ArithmeticError("polynomial degree did not decrease")
    if not r:
        return r
    return _mul_ground(r, lc_g ** n)


def subresultant_prs(f, g, one):
    """Brown–Collins subresultant PRS of f, g with deg f >= deg g.

    Returns the list of remainders; its members are the non-zero subresultants
    (up to the usual sign conventions), the last one being constant exactly when
    f and g are coprime.
    """
    f, g = _strip(f), _strip(g)
    n, m = _deg(f), _deg(g)
    if n < m:
        raise ValueError("expected deg f >= deg g")
    if not f:
        return []
    if not g:
        return [f]
    out = [f, g]
    d = n - m
    b = (-one) ** (d + 1)
    h = _mul_ground(prem(f, g), b)
    lc = _lc(g)
    c = lc ** d
    c = -c
    while h:
        k = _deg(h)
        out.append(h)
        f, g, m, d = g, h, k, m - k
        b = -lc * c ** d
        h = [_exq(a, b) for a in prem(f, g)]
        lc = _lc(g)
        if d > 1:
            c = _exq((-lc) ** d, c ** (d - 1))
        else:
            c = -lc
    return out


def resultant(f, g, zero, one):
    """Res(f, g) for coefficient lists over a domain, by the subresultant recurrence."""
    a, b = _strip(f), _strip(g)
    if not a or not b:
        return zero
    n, m = _deg(a), _deg(b)
    if n == 0 and m == 0:
        raise ValueError("resultant of two constants is not defined here")
    if n == 0:
        return a[0] ** m
    if m == 0:
        return b[0] ** n
    sign = one
    if n < m:
        a, b = b, a
        if (n * m) % 2:
            sign = -sign
    gg = hh = one
    while True:
        da, db = _deg(a), _deg(b)
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = prem(a, b)
        if not r:
            return zero
        a = b
        div = gg * hh ** delta
        b = [_exq(c, div) for c in r]
        gg = _lc(a)
        # h <- h^(1 - delta) g^delta
        if delta == 1:
            hh = gg
        elif delta > 1:
            hh = _exq(gg ** delta, hh ** (delta - 1))
        if _deg(b) == 0:
            da = _deg(a)
            last = b[0] if da == 1 else _exq(b[0] ** da, hh ** (da - 1))
            return sign * last


def first_subresultant(f, g, one):
    """A polynomial proportional to the degree-one subresultant, or None."""
    f, g = _strip(f), _strip(g)
    if _deg(f) < _deg(g):
        f, g = g, f
    for p in subresultant_prs(f, g, one):
        if _deg(p) == 1:
            return p
    return None


class DegenerateResultant(ValueError):
    pass


def resultant_x2(f: MPoly, g: MPoly) -> UPoly:
    """Resultant of two bivariate polynomials eliminating x2."""
    if not f or not g:
        raise ValueError("resultant of the zero polynomial")
    if f.degree(1) <= 0 and g.degree(1) <= 0:
        raise DegenerateResultant("both polynomials have degree 0 in x2")
    return resultant(x2_coeffs(f), x2_coeffs(g), UPoly(), UPoly.const(1))


def resultant_last(f: MPoly, g: MPoly) -> MPoly:
    """Resultant eliminating the last variable; result has one variable fewer."""
    i = f.n - 1
    if f.degree(i) <= 0 and g.degree(i) <= 0:
        raise DegenerateResultant("both polynomials are free of the last variable")
    zero = MPoly(f.n - 1)
    one = MPoly.const(f.n - 1, 1)
    return resultant(f.coeffs_in(i), g.coeffs_in(i), zero, one)


def univariate_resultant(p: UPoly, q: UPoly):
    return resultant(list(p.c), list(q.c), Q(0), ONE)


def sylvester_resultant_x2(f: MPoly, g: MPoly) -> UPoly:
    """Independent route: Sylvester determinant over Q[x1] via fraction-free elimination."""
    a = x2_coeffs(f)[::-1]
    b = x2_coeffs(g)[::-1]
    n, m = len(a) - 1, len(b) - 1
    size = n + m
    zero = UPoly()
    rows = []
    for i in range(m):
        rows.append([zero] * i + a + [zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([zero] * i + b + [zero] * (size - m - 1 - i))
    return bareiss_det(rows, UPoly.const(1))


def bareiss_det(rows, one):
    n = len(rows)
    mat = [list(r) for r in rows]
    sign = 1
    prev = one
    for k in range(n - 1):
        if not mat[k][k]:
            for i in range(k + 1, n):
                if mat[i][k]:
                    mat[k], mat[i] = mat[i], mat[k]
                    sign = -sign
                    break
            else:
                return one * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = _exq(mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j], prev)
        prev = mat[k][k]
    det = mat[n - 1][n - 1]
    return det if sign == 1 else -det



# -- signed subresultants (Sylvester–Habicht determinants) -----------------

def _habicht_matrix(p, q, j, zero):
    """Rows X^{q-j-1}P .. P, Q .. X^{p-j-1}Q; columns X^{p+q-j-1} .. X^0."""
    dp, dq = _deg(p), _deg(q)
    width = dp + dq - j
    rows = []
    for s in range(dq - j - 1, -1, -1):
        row = [zero] * width
        for i, c in enumerate(p):
            row[width - 1 - (i + s)] = c
        rows.append(row)
    for s in range(0, dp - j):
        row = [zero] * width
        for i, c in enumerate(q):
            row[width - 1 - (i + s)] = c
        rows.append(row)
    return rows


def signed_subresultants(p, q, zero, one, coefficients=True):
    """Signed subresultant data of p, q (deg p > deg q) over a domain.

    Returns ``{j: [c_0, ..., c_j]}`` for 0 <= j <= deg q, where ``c_j`` is the
    principal coefficient sRes_j.  With ``coefficients=False`` only ``c_j`` is
    filled (the others are None).  Index deg p holds p itself.
    """
    p, q = _strip(p), _strip(q)
    dp, dq = _deg(p), _deg(q)
    if dq < 0 or dp <= dq:
        raise ValueError("expected deg p > deg q >= 0")
    out = {dp: list(p)}
    for j in range(dq, -1, -1):
        mat = _habicht_matrix(p, q, j, zero)
        size = dp + dq - 2 * j
        square = [row[:size] for row in mat]
        coeffs = [None] * (j + 1)
        coeffs[j] = bareiss_det(square, one) if size else one
        if coefficients:
            for ell in range(j):
                col = dp + dq - j - 1 - ell
                sq = [row[: size - 1] + [row[col]] for row in mat]
                coeffs[ell] = bareiss_det(sq, one)
        out[j] = coeffs
    return out


def pmv(signs) -> int:
    """Generalised permanences minus variations of a sign sequence (first entry nonzero)."""
    total = 0
    idx = [i for i, s in enumerate(signs) if s]
    for a, b in zip(idx, idx[1:]):
        k = b - a
        if k % 2:
            eps = -1 if (k * (k - 1) // 2) % 2 else 1
            total += eps * signs[a] * signs[b]
    return total


# -- gcd and square-free part in Q[x1][x2] ----------------------------------

def _content(coeffs):
    g = UPoly()
    for c in coeffs:
        g = poly_gcd(g, c)
        if g.degree == 0:
            return UPoly.const(1)
    return g


def _pp(coeffs):
    c = _content(coeffs)
    return [a.exquo(c) for a in coeffs]


def bivariate_gcd(f: MPoly, g: MPoly) -> MPoly:
    """Gcd in Q[x1, x2], normalised so that its lex-leading coefficient is 1."""
    from .mpoly import from_x2_coeffs
    if not f:
        return _normalise(g)
    if not g:
        return _normalise(f)
    a, b = x2_coeffs(f), x2_coeffs(g)
    cont = poly_gcd(_content(a), _content(b))
    a, b = _pp(a), _pp(b)
    if _deg(a) < _deg(b):
        a, b = b, a
    while b and _deg(b) > 0:
        r = prem(a, b)
        a, b = b, (_pp(r) if r else [])
    if b:
        # nonzero constant in x2: primitive parts are coprime
        a = [UPoly.const(1)]
    return _normalise(from_x2_coeffs([cont * c for c in a]))


def _normalise(p: MPoly) -> MPoly:
    if not p:
        return p
    _, lc = p.leading()
    return p * (ONE / lc)


def bivariate_squarefree(f: MPoly) -> MPoly:
    """Square-free part of a bivariate polynomial (content handled separately)."""
    from .mpoly import from_x2_coeffs
    if not f:
        raise ValueError("square-free part of the zero polynomial")
    coeffs = x2_coeffs(f)
    cont = _content(coeffs)
    prim = from_x2_coeffs([c.exquo(cont) for c in coeffs])
    if prim.degree(1) > 0:
        g = bivariate_gcd(prim, prim.deriv(1))
        prim = prim.exquo(g)
    cpart = squarefree_part(cont) if cont.degree > 0 else UPoly.const(1)
    return _normalise(prim * from_upoly(cpart, 2, 0))

__all__ = [
    "prem",
    "subresultant_prs",
    "resultant",
    "first_subresultant",
    "resultant_x2",
    "resultant_last",
    "univariate_resultant",
    "sylvester_resultant_x2",
    "bareiss_det",
    "signed_subresultants",
    "pmv",
    "bivariate_gcd",
    "bivariate_squarefree",
    "DegenerateResultant",
    "from_upoly",
    "to_upoly",
]
