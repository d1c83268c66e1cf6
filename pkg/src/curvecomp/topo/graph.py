"""Column-structured planar graphs.

Vertices live in vertical columns (fibers over sorted abscissae); every edge
joins two adjacent columns.  Branches leaving the outermost columns towards
infinity are recorded as tails rather than edges.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..roots.algebraic import RealAlgebraicNumber, compare
from ..roots.fiber import PlanePoint

COLUMN_KINDS = ("critical", "intermediate", "svalue", "query", "connection")


@dataclass(eq=False)
class Column:
    x: RealAlgebraicNumber
    kind: str
    vertices: list = field(default_factory=list)  # vertex ids sorted by y


@dataclass(eq=False)
class FiberPoint:
    """A graph vertex: a curve point together with its column and rank."""

    vid: int
    point: PlanePoint
    column: Column
    kind: str
    tags: set = field(default_factory=set)

    @property
    def x(self):
        return self.point.x

    @property
    def multiplicity(self) -> int:
        return self.point.mult

    @property
    def rank(self) -> int:
        return self.column.vertices.index(self.vid)


class PlanarGraph:
    def __init__(self, f):
        self.f = f
        self.columns: list[Column] = []
        self.vertices: dict[int, FiberPoint] = {}
        self.edges: list[tuple[int, int]] = []
        self.tails: set[tuple[int, str]] = set()
        self._next = 0

    # -- construction ---------------------------------------------------
    def add_column(self, x, kind, points, index=None) -> Column:
        col = Column(x, kind)
        for p in points:
            v = FiberPoint(self._next, p, col, kind)
            self.vertices[v.vid] = v
            col.vertices.append(v.vid)
            self._next += 1
        if index is None:
            self.columns.append(col)
        else:
            self.columns.insert(index, col)
        return col

    def add_edge(self, u: int, v: int):
        self.edges.append((u, v))

    # -- queries --------------------------------------------------------
    def column_index(self, col: Column) -> int:
        for i, c in enumerate(self.columns):
            if c is col:
                return i
        raise KeyError("column not in graph")

    def degree(self, vid: int) -> int:
        return sum((u == vid) + (v == vid) for u, v in self.edges)

    def left_edges(self, vid: int):
        return [e for e in self.edges if e[1] == vid]

    def right_edges(self, vid: int):
        return [e for e in self.edges if e[0] == vid]

    def left_right_counts(self):
        out = {vid: [0, 0] for vid in self.vertices}
        for u, v in self.edges:
            out[u][1] += 1
            out[v][0] += 1
        return out

    def strip_edges(self, i: int):
        """Edges between columns i and i+1, ordered bottom to top."""
        left = {vid: r for r, vid in enumerate(self.columns[i].vertices)}
        right = {vid: r for r, vid in enumerate(self.columns[i + 1].vertices)}
        es = [e for e in self.edges if e[0] in left and e[1] in right]
        es.sort(key=lambda e: (left[e[0]], right[e[1]]))
        return es

    def tails_at(self, side: str):
        """Tail vertex ids on the given side ('left' or 'right'), bottom to top."""
        col = self.columns[0] if side == "left" else self.columns[-1]
        return [vid for vid in col.vertices if (vid, side) in self.tails]

    def locate_column(self, x: RealAlgebraicNumber):
        """(i, exact): x equals column i, or lies strictly between columns i and i+1.

        i = -1 means left of every column, i = len-1 (inexact) right of every column.
        """
        lo, hi = 0, len(self.columns)
        while lo < hi:
            mid = (lo + hi) // 2
            c = compare(self.columns[mid].x, x)
            if c == 0:
                return mid, True
            if c < 0:
                lo = mid + 1
            else:
                hi = mid
        return lo - 1, False

    def components(self):
        """Connected components as lists of vertex ids (tails do not join anything)."""
        parent = {v: v for v in self.vertices}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values(), key=min)

    def sorted_vertices(self):
        return [vid for col in self.columns for vid in col.vertices]

    def crossings_at(self, r) -> int:
        """Intersections of the straight-line realization with the vertical line x1 = r."""
        x = RealAlgebraicNumber.rational(r)
        i, exact = self.locate_column(x)
        if exact:
            return len(self.columns[i].vertices)
        if i < 0:
            return len(self.tails_at("left"))
        if i >= len(self.columns) - 1:
            return len(self.tails_at("right"))
        return len(self.strip_edges(i))

    def summary(self):
        return {
            "vertices": len(self.vertices),
            "edges": len(self.edges),
            "tails": len(self.tails),
            "columns": len(self.columns),
        }
