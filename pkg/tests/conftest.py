"""Shared test helpers: independent brute-force oracles the exact engine is checked against."""

from __future__ import annotations

import math
from collections import Counter


def ngon_coords(sides: int) -> list[tuple[float, float]]:
    """Unit-circumradius regular polygon with a vertex at (1, 0), as floats."""
    return [(math.cos(2 * math.pi * j / sides), math.sin(2 * math.pi * j / sides))
            for j in range(sides)]


def float_sq_dist_multiset(coords: list[tuple[float, float]], ndigits: int = 9) -> Counter:
    """Multiset of rounded squared pairwise distances, computed with plain floats.

    Independent of the exact engine: coordinates come in as floats and the
    grouping is by rounding, which is sound for the well-separated values the
    tests feed it.
    """
    out: Counter = Counter()
    for i in range(len(coords)):
        xi, yi = coords[i]
        for j in range(i + 1, len(coords)):
            xj, yj = coords[j]
            out[round((xi - xj) ** 2 + (yi - yj) ** 2, ndigits)] += 1
    return out


def pairwise_comparison_classes(points) -> list[tuple[object, int]]:
    """O(pairs^2) grouping of squared distances by exact pairwise comparison.

    The independent oracle for the hash-grouping path: no hashing, only
    CycloNum equality tests.
    """
    from richdist.geometry import squared_distance

    values = []
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            values.append(squared_distance(points[i], points[j]))
    classes: list[list] = []
    for v in values:
        for cls in classes:
            if cls[0] == v:
                cls[1] += 1
                break
        else:
            classes.append([v, 1])
    return [(rep, count) for rep, count in classes]
