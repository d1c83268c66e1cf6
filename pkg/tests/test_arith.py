import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st
from helpers import T, XS, bivariate, mp_sympy, rationals, up_sympy, upolys
from sympy.polys.subresultants_qq_zz import sylvester

from curvecomp.arith.matrix import SingularMatrix, SquareMatrix, apply_matrix, random_matrix
from curvecomp.arith.mpoly import MPoly, at_x1
from curvecomp.arith.parse import ParseError, parse_poly, parse_system
from curvecomp.arith.precond import is_squarefree, precond, satisfies_s
from curvecomp.arith.rational import Q, qstr, simple_between, to_q
from curvecomp.arith.subres import (
    DegenerateResultant,
    bivariate_gcd,
    bivariate_squarefree,
    pmv,
    resultant_x2,
    signed_subresultants,
    sylvester_resultant_x2,
    univariate_resultant,
)
from curvecomp.arith.upoly import UPoly, poly_gcd, poly_xgcd, squarefree_factorization, squarefree_part


# -- rationals and parsing ----------------------------------------------------

@pytest.mark.parametrize("text, value", [("3/4", Q(3, 4)), (" -2 ", Q(-2)), ("10/5", Q(2))])
def test_to_q_strings(text, value):
    assert to_q(text) == value


def test_to_q_rejects_floats():
    with pytest.raises(TypeError):
        to_q(0.5)


@given(rationals, rationals)
def test_simple_between_is_inside(a, b):
    if a == b:
        return
    lo, hi = min(a, b), max(a, b)
    m = simple_between(lo, hi)
    assert to_q(lo) < m < to_q(hi)


@given(rationals)
def test_qstr_roundtrip(a):
    assert to_q(qstr(to_q(a))) == to_q(a)


def test_parse_matches_sympy():
    text = "(x1 - 2*x2)^3 + 3/4*x1*x2 - 7"
    f = parse_poly(text, 2)
    assert sp.expand(mp_sympy(f) - sp.sympify(text.replace("^", "**"), locals=dict(x1=XS[0], x2=XS[1]))) == 0


@pytest.mark.parametrize("bad", ["", "x1^", "x0 + 1", "2 x1", "x1 + (x2", "x1 ^ -1", "x1 $ 2"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_poly(bad, 2)


def test_parse_system_skips_comments():
    sys_ = parse_system("# twisted cubic\nx2 - x1^2\n\nx3 - x1^3  # second\n")
    assert len(sys_) == 2 and all(g.n == 3 for g in sys_)


def test_to_str_reparses():
    f = parse_poly("x1^3*x2 - 5/2*x2^2 + x1 - 1", 2)
    assert parse_poly(f.to_str(), 2) == f


# -- univariate polynomials ---------------------------------------------------

@given(upolys(), upolys())
def test_gcd_divides_both(p, q):
    g = poly_gcd(p, q)
    assert g.divides(p) and g.divides(q)


@given(upolys(), upolys())
def test_gcd_matches_sympy(p, q):
    g = poly_gcd(p, q)
    ref = sp.gcd(up_sympy(p), up_sympy(q))
    assert g.degree == ref.degree()


@given(upolys(), upolys())
def test_xgcd_bezout(p, q):
    g, s, t = poly_xgcd(p, q)
    assert s * p + t * q == g


@given(upolys())
def test_squarefree_factorization_roundtrip(p):
    acc = UPoly.const(1)
    for f, m in squarefree_factorization(p):
        acc = acc * f ** m
    assert acc.monic() == p.monic()
    sq = squarefree_part(p)
    assert poly_gcd(sq, sq.deriv()).degree == 0 or sq.degree < 1


@given(upolys(), upolys())
def test_univariate_resultant_matches_sympy(p, q):
    if p.degree < 1 or q.degree < 1:
        return
    # sympy's resultant gets the sign wrong for some degree orders; the
    # Sylvester determinant is the reference
    ref = sylvester(up_sympy(p).as_expr(), up_sympy(q).as_expr(), T).det()
    assert Fraction(str(univariate_resultant(p, q))) == Fraction(str(ref))


# -- subresultants ------------------------------------------------------------

@given(upolys(max_degree=5))
def test_pmv_counts_real_roots(p):
    """PmV of the principal signed subresultants of (p, p') is the real root count."""
    if p.degree < 1:
        return
    ss = signed_subresultants(list(p.c), list(p.deriv().c), Q(0), Q(1), coefficients=False)
    lead = [ss[p.degree][-1]] + [ss[j][j] for j in range(p.degree - 1, -1, -1)]
    signs = [(c > 0) - (c < 0) for c in lead]
    assert pmv(signs) == len(sp.Poly(up_sympy(p)).real_roots(multiple=False)) or pmv(signs) == len(
        {r for r in sp.real_roots(up_sympy(p))})


@given(bivariate(), bivariate())
def test_resultant_x2_matches_sylvester_and_sympy(f, g):
    if f.degree(1) < 1 and g.degree(1) < 1:
        with pytest.raises(DegenerateResultant):
            resultant_x2(f, g)
        return
    r = resultant_x2(f, g)
    if f.degree(1) >= 1 and g.degree(1) >= 1:
        assert r == sylvester_resultant_x2(f, g)
    ref = sp.Poly(sylvester(mp_sympy(f), mp_sympy(g), XS[1]).det(), XS[0])
    ours = sp.Poly([sp.Rational(str(c)) for c in reversed(r.c)] or [0], XS[0])
    assert sp.expand(ours.as_expr() - ref.as_expr()) == 0


@given(bivariate(), bivariate(), rationals)
def test_resultant_vanishes_iff_common_root_or_degree_drop(f, g, a):
    if f.degree(1) < 1 or g.degree(1) < 1:
        return
    r = resultant_x2(f, g)
    fa, ga = at_x1(f, to_q(a)), at_x1(g, to_q(a))
    drop = fa.degree < f.degree(1) and ga.degree < g.degree(1)
    common = poly_gcd(fa, ga).degree >= 1 if fa and ga else True
    assert (r(to_q(a)) == 0) == (drop or common)


@given(bivariate(), bivariate())
def test_bivariate_gcd_matches_sympy(f, g):
    h = bivariate_gcd(f * g, g)
    ref = sp.gcd(mp_sympy(f * g), mp_sympy(g))
    assert sp.simplify(mp_sympy(h) / ref).is_number


def test_bivariate_squarefree():
    f = parse_poly("x2^2*(x1^2 + x2^2 - 1)^3*(x1 - 1)^2", 2)
    h = bivariate_squarefree(f)
    assert sp.simplify(mp_sympy(h) / mp_sympy(parse_poly("x2*(x1^2 + x2^2 - 1)*(x1 - 1)", 2))).is_number
    assert is_squarefree(h) and not is_squarefree(f)


# -- preconditioning ------------------------------------------------------------

def _direct_s(f: MPoly) -> bool:
    """V(f, d^k f/dx2^k) finite: the bivariate gcd of f with each derivative is constant in x2 degree."""
    e = mp_sympy(f)
    d = sp.degree(e, XS[1])
    g = e
    for _ in range(d):
        g = sp.diff(g, XS[1])
        if sp.Poly(sp.gcd(e, g), *XS[:2]).total_degree() > 0:
            return False
    return True


@pytest.mark.parametrize("text", [
    "x2*(x1^2 + x2^2 - 1)",
    "(x2^2 - x1)*(x2^2 - x1 - 1)",
    "(x2 - x1)*(x2 + x1)*(x2 - 1)",
    "x2^3 - x1",
    "(x1^2 + x2^2 - 1)*(x1^2 + x2^2 - 4)",
])
def test_precond_product_and_finiteness(text):
    f = parse_poly(text, 2)
    factors = precond(f)
    prod = MPoly.const(2, 1)
    for g in factors:
        prod = prod * g
        assert satisfies_s(g) and _direct_s(g)
    assert sp.simplify(mp_sympy(prod) / mp_sympy(f)).is_number


def test_satisfies_s_rejects_line_times_circle():
    # the second x2-derivative 6*x2 vanishes on the whole line x2 = 0
    f = parse_poly("x2*(x1^2 + x2^2 - 1)", 2)
    assert not satisfies_s(f) and not _direct_s(f)
    assert len(precond(f)) == 2


# -- matrices -------------------------------------------------------------------

@given(st.integers(0, 10_000))
def test_apply_matrix_composition(seed):
    # p -> p(A x) composes as p(A B x) = (p o A)(B x)
    rng = random.Random(seed)
    a = random_matrix(3, 2, rng)
    b = random_matrix(3, 2, rng)
    p = parse_poly("x1^2*x3 - x2 + 3*x1*x2*x3 - 1", 3)
    assert apply_matrix(p, a @ b) == apply_matrix(apply_matrix(p, a), b)
    assert apply_matrix(apply_matrix(p, a), a.inverse()) == p
    assert p.total_degree() == apply_matrix(p, a).total_degree()


def test_apply_matrix_examples():
    a = SquareMatrix([[2, -1, 3], [0, 1, 5], [1, 1, 1]])
    p = parse_poly("x1*x2 - x3^3", 3)
    assert apply_matrix(p, SquareMatrix.identity(3)) == p
    assert apply_matrix(parse_poly("x1", 3), a) == parse_poly("2*x1 - x2 + 3*x3", 3)
    with pytest.raises(SingularMatrix):
        apply_matrix(p, SquareMatrix([[1, 1, 0], [1, 1, 0], [0, 0, 1]]))


def test_inverse_and_singular():
    a = SquareMatrix([[1, 2, 0], [0, 1, 3], [4, 0, 1]])
    assert a @ a.inverse() == SquareMatrix.identity(3)
    with pytest.raises(SingularMatrix):
        SquareMatrix([[1, 2], [2, 4]], check_invertible=True)


def test_sympy_symbol_is_t():
    assert str(T) == "t"
