"""Builders for point sets in which many distances repeat unusually often.

Two families are produced, both grown from a regular polygon by exact
isometries:

* `build_theorem1(n)`: two copies of a polygon sharing one vertex (odd n,
  rotation about the vertex) or one edge (even n, reflection across it),
  giving n points with at least floor(n/4) squared-distance classes that each
  occur at least n+1 times.

* `build_theorem2(n, m)`: writing n = (m+1)k + r with r in [2, m+2], a regular
  (k+2)-gon is copied by r-2 rotations about a fixed vertex and m+2-r chained
  edge reflections, giving n points with at least floor(n/(2(m+1))) classes
  that each occur at least n+m times.

Every transform choice is validated exactly: a copy must share exactly one
point (rotations) or exactly two points (reflections) with the union built so
far, and the finished set must pass `verify_claim`.  Degenerate choices are
skipped by backtracking over a deterministic pool of rotation turns and
reflection edges; the choices that worked are recorded in a
`ConstructionPlan`, and replaying a plan rebuilds the identical point set.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from math import gcd

from .cyclo import CycloNum
from .geometry import CoincidenceError, PointSet, Reflection, Rotation, regular_ngon
from .spectrum import DistanceSpectrum, distance_spectrum

_TURN_POOL_SIZE = 64
_SEARCH_BUDGET = 5000


class BelowThresholdError(ValueError):
    """The requested size is below the range where the target is non-vacuous."""


class SearchExhaustedError(RuntimeError):
    """No transform choice in the pool verified; this signals a bug, not bad luck."""


@dataclass(frozen=True)
class ConstructionPlan:
    """Reproducible record of one build.

    `m` is the richness surplus of the generalized builder; 0 marks the
    two-copy builder, whose only choice is a rotation turn.  `edges` holds the
    reflection lines as pairs of point indices into the growing union.
    """

    n: int
    m: int
    k: int | None
    r: int | None
    turns: tuple[Fraction, ...]
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Verification:
    """Outcome of an exact rich-distance check."""

    passed: bool
    required_classes: int
    required_multiplicity: int
    achieved_classes: int
    best_multiplicity: int
    witnesses: tuple[tuple[CycloNum, int], ...]
    spectrum: DistanceSpectrum = dataclass_field(repr=False)


def verify_claim(ps: PointSet, classes: int, multiplicity: int,
                 spectrum: DistanceSpectrum | None = None) -> Verification:
    """Check that at least `classes` squared-distance classes occur at least
    `multiplicity` times each, with exact arithmetic.

    `classes = 0` passes vacuously but the spectrum is still computed so the
    report carries the achieved numbers.  On failure the result records how
    many classes met the bar and the best multiplicity for which the class
    count would have sufficed.
    """
    if spectrum is None:
        spectrum = distance_spectrum(ps)
    hits = [(c.representative, c.multiplicity)
            for c in spectrum.classes if c.multiplicity >= multiplicity]
    mults = sorted((c.multiplicity for c in spectrum.classes), reverse=True)
    best = mults[classes - 1] if 0 < classes <= len(mults) else 0
    passed = len(hits) >= classes
    return Verification(
        passed=passed,
        required_classes=classes,
        required_multiplicity=multiplicity,
        achieved_classes=len(hits),
        best_multiplicity=best,
        witnesses=tuple(hits) if passed else (),
        spectrum=spectrum,
    )


def decompose(n: int, m: int) -> tuple[int, int]:
    """Split n as (m+1)*k + r with k >= 1 and r in [2, m+2]."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if n < m + 3:
        raise BelowThresholdError(
            f"n={n} is vacuous for surplus m={m}; the smallest non-vacuous size is {m + 3}")
    k = (n - 2) // (m + 1)
    r = n - (m + 1) * k
    assert k >= 1 and 2 <= r <= m + 2
    return k, r


def rotation_turn_pool(limit: int = _TURN_POOL_SIZE) -> list[Fraction]:
    """Deterministic pool of rotation turns: 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ..."""
    turns: list[Fraction] = []
    b = 2
    while len(turns) < limit:
        for a in range(1, b):
            if gcd(a, b) == 1:
                turns.append(Fraction(a, b))
                if len(turns) == limit:
                    break
        b += 1
    return turns


# --------------------------------------------------------------------------
# Two copies sharing a vertex or an edge
# --------------------------------------------------------------------------

def build_theorem1(n: int, plan: ConstructionPlan | None = None) -> tuple[PointSet, ConstructionPlan]:
    """n points with at least floor(n/4) distance classes occurring >= n+1 times.

    Odd n uses a rotated copy of a regular ((n+1)/2)-gon about its first
    vertex (default turn 1/2, a point reflection, whose copy provably shares
    only that vertex); even n reflects a regular (n/2+1)-gon across its first
    edge.  The returned set is verified exactly before it is returned.
    """
    if n < 4:
        raise BelowThresholdError(
            f"n={n} is vacuous; the smallest non-vacuous size is 4")
    required = (n // 4, n + 1)
    if n % 2:
        sides = (n + 1) // 2
        base = regular_ngon(sides)
        pool = list(plan.turns) if plan is not None else rotation_turn_pool()
        for turn in pool:
            entry = Rotation(turn=turn, center=0, source=tuple(range(sides)), merged=True)
            try:
                union, _ = base.extended(entry, expect_shared=1)
            except CoincidenceError:
                continue
            if verify_claim(union, *required).passed:
                return union, ConstructionPlan(n, 0, None, None, (turn,), ())
        raise SearchExhaustedError(f"no rotation turn verified for n={n}")
    sides = n // 2 + 1
    base = regular_ngon(sides)
    edge = plan.edges[0] if plan is not None else (0, 1)
    entry = Reflection(edge=edge, source=tuple(range(sides)), merged=True)
    union, _ = base.extended(entry, expect_shared=2)
    if not verify_claim(union, *required).passed:
        raise SearchExhaustedError(f"edge reflection failed verification for n={n}")
    return union, ConstructionPlan(n, 0, None, None, (), (edge,))


# --------------------------------------------------------------------------
# Generalized builder: r-2 rotations, then m+2-r chained reflections
# --------------------------------------------------------------------------

def _copy_edges(copy: tuple[int, ...]) -> list[tuple[int, int]]:
    s = len(copy)
    return [(copy[e], copy[(e + 1) % s]) for e in range(s)]


def _edge_local(copy: tuple[int, ...], gi: int, gj: int) -> int | None:
    """Local start index when (gi, gj) is an edge of the copy, else None."""
    s = len(copy)
    for e in range(s):
        a, b = copy[e], copy[(e + 1) % s]
        if (a, b) == (gi, gj) or (a, b) == (gj, gi):
            return e
    return None


def _resolve_and_reflect(union: PointSet, copies: list[tuple[int, ...]],
                         gi: int, gj: int, new_points: int):
    """Reflect the newest copy that has (gi, gj) as an edge and gains `new_points`.

    This rule makes a bare pair of point indices an unambiguous reflection
    choice, so plans can store edges exactly as index pairs.  Returns
    (new union, new copy, local edge index) or None.
    """
    for c in range(len(copies) - 1, -1, -1):
        local = _edge_local(copies[c], gi, gj)
        if local is None:
            continue
        entry = Reflection(edge=(gi, gj), source=copies[c], merged=True)
        try:
            extended, image = union.extended(entry, expect_shared=2)
        except CoincidenceError:
            continue
        if len(extended) - len(union) == new_points:
            return extended, image, local
    return None


def _reflection_candidates(copies: list[tuple[int, ...]],
                           shared_local: int | None) -> list[tuple[int, int]]:
    """Candidate reflection edges, best policy guess first.

    Before any reflection the policy edge is the base polygon's edge farthest
    from the fixed vertex; afterwards it is the newest copy's edge opposite
    the one it shares with its parent, which marches the strip outward and
    away from the rotation cluster.
    """
    s = len(copies[0])
    newest = copies[-1]
    if shared_local is None:
        h = s // 2
        policy = (copies[0][h], copies[0][(h + 1) % s])
    else:
        h = (shared_local + (s + 1) // 2) % s
        policy = (newest[h], newest[(h + 1) % s])
    seen = {frozenset(policy)}
    ordered = [policy]
    for c in range(len(copies) - 1, -1, -1):
        for edge in _copy_edges(copies[c]):
            key = frozenset(edge)
            if key not in seen:
                seen.add(key)
                ordered.append(edge)
    return ordered


def build_theorem2(n: int, m: int,
                   plan: ConstructionPlan | None = None) -> tuple[PointSet, ConstructionPlan]:
    """n points with at least floor(n/(2(m+1))) classes occurring >= n+m times.

    Builds the (k+2)-gon from n = (m+1)k + r, applies r-2 rotations about the
    first vertex with distinct turns from the deterministic pool, then m+2-r
    chained edge reflections.  Point counts are pinned exactly at every step:
    the build satisfies (k+2) + (r-2)(k+1) + (m+2-r)k = n by construction or
    fails loudly.  Backtracks over pool choices until verification passes.
    """
    k, r = decompose(n, m)
    sides = k + 2
    required = (n // (2 * (m + 1)), n + m)
    base = regular_ngon(sides)
    rotations = r - 2
    reflections = m + 2 - r
    forced_turns = list(plan.turns) if plan is not None else None
    forced_edges = list(plan.edges) if plan is not None else None
    if plan is not None and (len(plan.turns) != rotations or len(plan.edges) != reflections):
        raise ValueError(f"plan shape does not match n={n}, m={m}")
    pool = rotation_turn_pool()
    budget = [_SEARCH_BUDGET]

    def search(union: PointSet, copies: list[tuple[int, ...]],
               turns: tuple[Fraction, ...], edges: tuple[tuple[int, int], ...],
               shared_local: int | None):
        if len(turns) < rotations:
            if forced_turns is not None:
                candidates = [forced_turns[len(turns)]]
            else:
                candidates = [t for t in pool if t not in turns]
            for turn in candidates:
                if budget[0] <= 0:
                    return None
                budget[0] -= 1
                entry = Rotation(turn=turn, center=0, source=copies[0], merged=True)
                try:
                    extended, image = union.extended(entry, expect_shared=1)
                except CoincidenceError:
                    continue
                result = search(extended, copies + [image], turns + (turn,), edges, shared_local)
                if result is not None:
                    return result
            return None
        if len(edges) < reflections:
            if forced_edges is not None:
                candidates = [forced_edges[len(edges)]]
            else:
                candidates = _reflection_candidates(copies, shared_local)
            for gi, gj in candidates:
                if budget[0] <= 0:
                    return None
                budget[0] -= 1
                resolved = _resolve_and_reflect(union, copies, gi, gj, k)
                if resolved is None:
                    continue
                extended, image, local = resolved
                result = search(extended, copies + [image], turns, edges + ((gi, gj),), local)
                if result is not None:
                    return result
            return None
        assert len(union) == n, "point-count identity violated"
        if verify_claim(union, *required).passed:
            return union, ConstructionPlan(n, m, k, r, turns, edges)
        return None

    result = search(base, [tuple(range(sides))], (), (), None)
    if result is None:
        raise SearchExhaustedError(
            f"no transform choices verified for n={n}, m={m} within the search budget")
    return result


def replay(plan: ConstructionPlan) -> PointSet:
    """Rebuild the exact point set a plan describes."""
    if plan.m == 0:
        return build_theorem1(plan.n, plan=plan)[0]
    return build_theorem2(plan.n, plan.m, plan=plan)[0]
