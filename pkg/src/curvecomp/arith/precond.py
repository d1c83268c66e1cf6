"""Splitting a square-free curve into factors with finite derivative loci, and genericity checks."""
from __future__ import annotations

from dataclasses import dataclass

from .mpoly import MPoly, x2_coeffs
from .subres import DegenerateResultant, bivariate_gcd, resultant_x2
from .upoly import squarefree_part


def satisfies_s(f: MPoly) -> bool:
    """True when V(f, d^k f/dx2^k) is finite for 1 <= k <= deg(f, x2).

    Checked directly: each resultant in x2 must be a nonzero polynomial.
    """
    d = f.degree(1)
    g = f
    for k in range(1, d + 1):
        g = g.deriv(1)
        if g.is_const():
            continue
        try:
            if not resultant_x2(f, g):
                return False
        except DegenerateResultant:
            return False
    return True


def precond(f: MPoly):
    """Factors f_1..f_r with f = c * f_1 ... f_r, each satisfying the finiteness assumption."""
    if f.is_const():
        return []
    d = f.degree(1)
    g = f
    for _ in range(1, d):
        g = g.deriv(1)
        h = bivariate_gcd(f, g)
        if not h.is_const():
            return precond(h) + precond(f.exquo(h))
    return [f]


@dataclass
class GenericityReport:
    ok: bool
    reason: str = ""
    witness: object = None

    def __bool__(self):
        return self.ok


def check_generic_coordinates(f: MPoly) -> GenericityReport:
    """Constant leading coefficient in x2 and at most one multiple root per critical fiber."""
    from ..roots.algebraic import isolate_roots
    from ..roots.fiber import FiberData, NonGenericFiber

    coeffs = x2_coeffs(f)
    if not coeffs or coeffs[-1].degree != 0:
        return GenericityReport(False, "leading coefficient in x2 is not constant")
    if len(coeffs) == 1:
        return GenericityReport(True)
    w1 = resultant_x2(f, f.deriv(1))
    if not w1:
        return GenericityReport(False, "f is not square-free")
    data = FiberData(f)
    for alpha in isolate_roots(squarefree_part(w1)) if w1.degree > 0 else []:
        try:
            data.multiple_root(alpha)
        except NonGenericFiber:
            return GenericityReport(False, "two multiple roots in one fiber", alpha)
    return GenericityReport(True)


def is_squarefree(f: MPoly) -> bool:
    from .subres import bivariate_squarefree
    if f.is_const():
        return True
    return bivariate_squarefree(f).total_degree() == f.total_degree()
