"""Small exact square matrices and linear changes of variables."""
from __future__ import annotations

import random
from typing import Sequence

from .mpoly import MPoly
from .rational import ONE, ZERO, Q, qstr, to_q


class SingularMatrix(ValueError):
    pass


class SquareMatrix:
    __slots__ = ("rows", "n")

    def __init__(self, rows: Sequence[Sequence], check_invertible: bool = False):
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix is not square")
        self.n = n
        self.rows = tuple(tuple(to_q(a) for a in r) for r in rows)
        if check_invertible and self.det() == 0:
            raise SingularMatrix("matrix is singular")

    @classmethod
    def identity(cls, n: int) -> "SquareMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, SquareMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"SquareMatrix({self.to_json()})"

    def to_json(self):
        return [[qstr(a) for a in r] for r in self.rows]

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        n = self.n
        return SquareMatrix(
            [[sum((self.rows[i][k] * other.rows[k][j] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]
        )

    def apply(self, vec):
        """Matrix-vector product; entries may be any ring supporting ``*`` by rationals."""
        out = []
        for r in self.rows:
            acc = None
            for a, v in zip(r, vec):
                if a == 0:
                    continue
                term = v * a
                acc = term if acc is None else acc + term
            out.append(acc if acc is not None else vec[0] * 0)
        return out

    def _elim(self):
        n = self.n
        m = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self.rows)]
        det = ONE
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
            if piv is None:
                return ZERO, None
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            p = m[col][col]
            det *= p
            inv = ONE / p
            m[col] = [v * inv for v in m[col]]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    fac = m[r][col]
                    m[r] = [a - fac * b for a, b in zip(m[r], m[col])]
        return det, [row[n:] for row in m]

    def det(self):
        return self._elim()[0]

    def inverse(self) -> "SquareMatrix":
        det, inv = self._elim()
        if inv is None:
            raise SingularMatrix("matrix is singular")
        return SquareMatrix(inv)


def apply_matrix(p: MPoly, a: SquareMatrix) -> MPoly:
    """p(A x): substitute x_i by the i-th row of A applied to x."""
    if a.n != p.n:
        raise ValueError("variable count does not match matrix size")
    if a.det() == 0:
        raise SingularMatrix("change of variables must be invertible")
    images = []
    for r in a.rows:
        t = {}
        for j, v in enumerate(r):
            if v != 0:
                e = [0] * a.n
                e[j] = 1
                t[tuple(e)] = v
        images.append(MPoly(a.n, t))
    return p.compose(images)


def random_matrix(n: int, bits: int, rng: random.Random) -> SquareMatrix:
    """Invertible matrix with integer entries of at most ``bits`` bits plus sign."""
    hi = (1 << bits) - 1
    while True:
        m = SquareMatrix([[Q(rng.randint(-hi, hi)) for _ in range(n)] for _ in range(n)])
        if m.det() != 0:
            return m


def shear_x1(s, n: int = 2) -> SquareMatrix:
    """x1 -> x1 + s*x2, other variables fixed."""
    rows = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    rows[0][1] = to_q(s)
    return SquareMatrix(rows)
