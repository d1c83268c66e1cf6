"""Curated test curves, as polynomial text in the shared grammar."""
from __future__ import annotations

import random


def random_curve(degree: int = 6, seed: int = 2026, bound: int = 9) -> str:
    """Dense plane curve with integer coefficients drawn from [-bound, bound]."""
    rng = random.Random(seed)
    terms = []
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            c = rng.randint(-bound, bound)
            terms.append(f"{c:+d}*x1^{i}*x2^{j}")
    return "".join(terms).lstrip("+")


PLANE = {
    "circle": "x1^2 + x2^2 - 1",
    "nested_circles": "(x1^2 + x2^2 - 1)*(x1^2 + x2^2 - 4)",
    "disjoint_circles": "(x1^2 + x2^2 - 1)*((x1 - 10)^2 + x2^2 - 1)",
    "line_circle": "x2*(x1^2 + x2^2 - 1)",
    "node": "x2^2 - x1^2*(x1 + 1)",
    "cusp": "x2^2 - x1^3",
    "lemniscate": "(x1^2 + x2^2)^2 - (x1^2 - x2^2)",
    "random_deg6": random_curve(),
    "cubic_graph": "x2^3 - x1",
    "three_lines": "x2*(x2 - x1)*(x2 + x1 - 1)",
    "empty": "x1^2 + x2^2 + 1",
    "tangency": "(x2^2 - x1)*(x2^2 - x1 - 1)",
}

SPACE = {
    "twisted_cubic": ("x2 - x1^2", "x3 - x1^3"),
    "viviani": ("x1^2 + x2^2 + x3^2 - 4", "(x1 - 1)^2 + x2^2 - 1"),
    "parallel_circles": ("x1^2 + x2^2 - 1", "x3^2 - 1"),
}

# components expected from the geometry of each curve
PLANE_COUNTS = {
    "circle": 1, "nested_circles": 2, "disjoint_circles": 2, "line_circle": 1,
    "node": 1, "cusp": 1, "lemniscate": 1, "random_deg6": 2, "cubic_graph": 1,
    "three_lines": 1, "empty": 0, "tangency": 2,
}
SPACE_COUNTS = {"twisted_cubic": 1, "viviani": 1, "parallel_circles": 2}
