"""Semi-algebraic atoms, conjunctions and component descriptions.

Every polynomial payload is an exact ``MPoly``.  Bounds of range atoms are
``RealAlgebraicNumber`` values (exact rationals or isolated roots).

Exact evaluation needs a point object with a ``sign(p: MPoly) -> int``
method returning the exact sign of p at the point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..arith.mpoly import MPoly
from ..arith.parse import parse_poly
from ..arith.rational import qstr, to_q
from ..arith.upoly import UPoly
from ..roots.algebraic import RealAlgebraicNumber

KINDS = ("eq", "gt", "lt", "range")


def univariate_compose(m: UPoly, p: MPoly) -> MPoly:
    """m(p) for univariate m and multivariate p."""
    acc = MPoly(p.n)
    for c in reversed(m.c):
        acc = acc * p + c
    return acc


def compare_with_bound(point, p: MPoly, bound: RealAlgebraicNumber) -> int:
    """Exact sign of p(point) - bound."""
    if bound.is_rational:
        return point.sign(p - bound.lo)
    if point.sign(p - bound.lo) <= 0:
        return -1
    if point.sign(p - bound.hi) >= 0:
        return 1
    s = point.sign(univariate_compose(bound.poly, p))
    if s == 0:
        return 0
    hi_sign = bound.poly.sign_at(bound.hi)
    return 1 if s == hi_sign else -1


@dataclass
class SACondition:
    kind: str
    poly: MPoly
    lo: Optional[RealAlgebraicNumber] = None
    hi: Optional[RealAlgebraicNumber] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown atom kind {self.kind!r}")

    def holds(self, point) -> bool:
        if self.kind == "eq":
            return point.sign(self.poly) == 0
        if self.kind == "gt":
            return point.sign(self.poly) > 0
        if self.kind == "lt":
            return point.sign(self.poly) < 0
        if self.lo is not None and compare_with_bound(point, self.poly, self.lo) <= 0:
            return False
        if self.hi is not None and compare_with_bound(point, self.poly, self.hi) >= 0:
            return False
        return True

    def transport(self, images) -> "SACondition":
        return SACondition(self.kind, self.poly.compose(images), self.lo, self.hi)

    def to_json(self, names=None):
        out = {"kind": self.kind, "poly": self.poly.to_str(names)}
        if self.kind == "range":
            out["lo"] = _bound_json(self.lo)
            out["hi"] = _bound_json(self.hi)
        return out

    @classmethod
    def from_json(cls, obj, nvars: int):
        poly = parse_poly(obj["poly"], nvars)
        if obj["kind"] == "range":
            return cls("range", poly, _bound_from_json(obj.get("lo")), _bound_from_json(obj.get("hi")))
        return cls(obj["kind"], poly)


def _bound_json(b: Optional[RealAlgebraicNumber]):
    if b is None:
        return None
    if b.is_rational:
        return qstr(b.lo)
    return {"root_of": b.poly.to_str("t"), "lo": qstr(b.lo), "hi": qstr(b.hi)}


def _bound_from_json(obj):
    if obj is None:
        return None
    if isinstance(obj, str):
        return RealAlgebraicNumber.rational(to_q(obj))
    from ..arith.mpoly import to_upoly
    m = to_upoly(parse_poly(obj["root_of"].replace("t", "x1"), 1), 0)
    return RealAlgebraicNumber(m, to_q(obj["lo"]), to_q(obj["hi"]))


@dataclass
class SADescription:
    atoms: list
    label: str = ""
    kind: str = "edge"

    def holds(self, point) -> bool:
        return all(a.holds(point) for a in self.atoms)

    def transport(self, images) -> "SADescription":
        return SADescription([a.transport(images) for a in self.atoms], self.label, self.kind)

    def extend(self, atoms) -> "SADescription":
        return SADescription(self.atoms + list(atoms), self.label, self.kind)

    def to_json(self, names=None):
        return {"op": "and", "label": self.label, "kind": self.kind,
                "atoms": [a.to_json(names) for a in self.atoms]}

    @classmethod
    def from_json(cls, obj, nvars: int):
        return cls([SACondition.from_json(a, nvars) for a in obj["atoms"]],
                   obj.get("label", ""), obj.get("kind", "edge"))


@dataclass
class ComponentDescription:
    """A connected component as a disjunction of conjunctions (pieces)."""

    component_id: int
    pieces: list
    nvars: int = 2
    witness_box: dict = field(default_factory=dict)
    chart: str = ""

    def holds(self, point) -> bool:
        return any(p.holds(point) for p in self.pieces)

    def to_json(self):
        names = [f"x{i + 1}" for i in range(self.nvars)]
        out = {"component_id": self.component_id, "nvars": self.nvars,
               "pieces": [p.to_json(names) for p in self.pieces],
               "witness_box": self.witness_box}
        if self.chart:
            out["chart"] = self.chart
        return out

    @classmethod
    def from_json(cls, obj):
        n = obj.get("nvars", 2)
        return cls(obj["component_id"], [SADescription.from_json(p, n) for p in obj["pieces"]],
                   n, obj.get("witness_box", {}), obj.get("chart", ""))


class RationalPoint:
    """A point with rational coordinates (implements the exact sign protocol)."""

    def __init__(self, coords):
        self.coords = tuple(to_q(c) for c in coords)

    def sign(self, p: MPoly) -> int:
        v = p(*self.coords)
        return (v > 0) - (v < 0)
