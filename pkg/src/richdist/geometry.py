"""Planar geometry over cyclotomic coordinates.

A point is a single `CycloNum` under the complex embedding, so regular
polygons, rotations by rational turns and reflections across lines through
representable points all stay inside some Q(zeta_N) and every geometric
predicate reduces to exact field arithmetic.

Each `PointSet` carries a provenance log.  Replaying the log from its base
polygon reproduces the point list exactly, and the log also records which
points form which polygon copy, which is what the figure renderer draws.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .cyclo import CycloField, CycloNum, FieldMismatchError, join_order


class DegenerateFigureError(ValueError):
    """A polygon with fewer than 3 sides, or a line through a single point."""


class CoincidenceError(ValueError):
    """A transform produced a different overlap with the existing points than expected."""


PointRef = Union[int, CycloNum]          # index into the current point list, or a value
EdgeRef = Union[tuple[int, int], tuple[CycloNum, CycloNum]]


@dataclass(frozen=True)
class BasePolygon:
    sides: int


@dataclass(frozen=True)
class Rotation:
    """Rotate `source` points by `turn` of a full revolution about `center`.

    `merged` distinguishes the two uses of a transform: False means the result
    is the bare image, True means the image is unioned into the existing set
    (deduplicating exactly), which is how constructions grow.
    """

    turn: Fraction
    center: PointRef
    source: tuple[int, ...] | None = None
    merged: bool = False


@dataclass(frozen=True)
class Reflection:
    """Reflect `source` points across the line through the two `edge` points."""

    edge: EdgeRef
    source: tuple[int, ...] | None = None
    merged: bool = False


TransformEntry = Union[BasePolygon, Rotation, Reflection]


class PointSet:
    """An ordered set of pairwise-distinct points in a common field."""

    __slots__ = ("field", "points", "provenance")

    def __init__(self, field: CycloField, points: tuple[CycloNum, ...],
                 provenance: tuple[TransformEntry, ...] = ()):
        for p in points:
            if p.field.order != field.order:
                raise FieldMismatchError(
                    f"point in field of order {p.field.order} inside a set of order {field.order}")
        if len(set(points)) != len(points):
            raise CoincidenceError("points must be pairwise distinct")
        self.field = field
        self.points = points
        self.provenance = provenance

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> CycloNum:
        return self.points[i]

    def __contains__(self, p: CycloNum) -> bool:
        return any(q == p for q in self.points)

    def index(self, p: CycloNum) -> int:
        for i, q in enumerate(self.points):
            if q == p:
                return i
        raise ValueError("point not in set")

    def __eq__(self, other) -> bool:
        """Equality on field and points; provenance is bookkeeping, not identity."""
        return (isinstance(other, PointSet)
                and other.field.order == self.field.order
                and other.points == self.points)

    def __hash__(self) -> int:
        return hash((self.field.order, self.points))

    def __repr__(self) -> str:
        return f"PointSet(order={self.field.order}, n={len(self.points)})"

    # -- the transform engine -------------------------------------------------

    def _resolve_point(self, ref: PointRef) -> CycloNum:
        if isinstance(ref, int):
            return self.points[ref]
        return ref

    def extended(self, entry: TransformEntry,
                 expect_shared: int | None = None) -> tuple["PointSet", tuple[int, ...]]:
        """Apply one log entry and return (new set, indices of the image points).

        With ``entry.merged`` the image is unioned into the current points and
        ``expect_shared`` (when given) pins the exact number of image points
        that must already be present; any other overlap raises
        `CoincidenceError`, which is how degenerate transform choices surface.
        """
        if isinstance(entry, BasePolygon):
            raise ValueError("BasePolygon can only start a log, not extend one")
        source = entry.source if entry.source is not None else tuple(range(len(self.points)))
        if not entry.merged and entry.source is not None:
            raise ValueError("a bare image transform applies to the whole set")

        if isinstance(entry, Rotation):
            turn = Fraction(entry.turn)
            if not 0 < turn < 1:
                raise ValueError(f"turn must lie strictly between 0 and 1, got {turn}")
            center = self._resolve_point(entry.center)
            order = join_order(self.field.order, turn.denominator, center.field.order)
            field = CycloField.of(order)
            center = center.embed(field)
            rot = field.zeta(turn.numerator * (order // turn.denominator))
            points = [self.points[i].embed(field) for i in range(len(self.points))]
            images = [center + rot * (points[i] - center) for i in source]
        else:
            a = self._resolve_point(entry.edge[0])
            b = self._resolve_point(entry.edge[1])
            order = join_order(self.field.order, a.field.order, b.field.order)
            field = CycloField.of(order)
            a, b = a.embed(field), b.embed(field)
            if a == b:
                raise DegenerateFigureError("reflection line needs two distinct points")
            u = b - a
            w = u * u.conj().inv()  # unit factor turning conjugation into this reflection
            points = [self.points[i].embed(field) for i in range(len(self.points))]
            images = [a + w * (points[i] - a).conj() for i in source]

        provenance = self.provenance + (entry,)
        if not entry.merged:
            return PointSet(field, tuple(images), provenance), tuple(range(len(images)))

        merged = list(points)
        positions: dict[CycloNum, int] = {p: i for i, p in enumerate(merged)}
        image_indices = []
        shared = 0
        for img in images:
            at = positions.get(img)
            if at is None:
                at = len(merged)
                merged.append(img)
                positions[img] = at
            else:
                shared += 1
            image_indices.append(at)
        if expect_shared is not None and shared != expect_shared:
            raise CoincidenceError(
                f"transform shares {shared} points with the set, expected {expect_shared}")
        return PointSet(field, tuple(merged), provenance), tuple(image_indices)


# --------------------------------------------------------------------------
# Public operations
# --------------------------------------------------------------------------

def regular_ngon(sides: int) -> PointSet:
    """Unit-circumradius regular polygon: the points zeta_sides^j, vertex at 1."""
    if sides < 3:
        raise DegenerateFigureError(f"a polygon needs at least 3 sides, got {sides}")
    field = CycloField.of(sides)
    points = tuple(field.zeta(j) for j in range(sides))
    return PointSet(field, points, (BasePolygon(sides),))


def rotate_about(ps: PointSet, center: CycloNum, turn) -> PointSet:
    """Image of all points under rotation by `turn` of a revolution about `center`."""
    ref: PointRef = center
    for i, p in enumerate(ps.points):
        if p == center:
            ref = i
            break
    entry = Rotation(turn=Fraction(turn), center=ref)
    return ps.extended(entry)[0]


def reflect_line(ps: PointSet, a: CycloNum, b: CycloNum) -> PointSet:
    """Image of all points under reflection across the line through `a` and `b`."""
    refs = []
    for value in (a, b):
        ref: PointRef = value
        for i, p in enumerate(ps.points):
            if p == value:
                ref = i
                break
        refs.append(ref)
    entry = Reflection(edge=(refs[0], refs[1]))
    return ps.extended(entry)[0]


def squared_distance(p: CycloNum, q: CycloNum) -> CycloNum:
    """Exact squared Euclidean distance |p - q|^2 as a real field element."""
    if p.field.order != q.field.order:
        raise FieldMismatchError(
            f"points live in different fields (orders {p.field.order} and {q.field.order})")
    d = p - q
    return d * d.conj()


def replay_provenance(log: tuple[TransformEntry, ...]) -> PointSet:
    """Rebuild a point set from its provenance log."""
    if not log or not isinstance(log[0], BasePolygon):
        raise ValueError("a provenance log must start with a BasePolygon entry")
    ps = regular_ngon(log[0].sides)
    for entry in log[1:]:
        ps, _ = ps.extended(entry)
    return ps


def polygon_copies(ps: PointSet) -> list[tuple[int, ...]] | None:
    """Vertex index cycles of each polygon copy recorded in the provenance.

    Returns None when the set has no replayable polygon history (for example
    a parsed points file).  Copy 0 is the base polygon.
    """
    log = ps.provenance
    if not log or not isinstance(log[0], BasePolygon):
        return None
    current = regular_ngon(log[0].sides)
    copies: list[tuple[int, ...]] = [tuple(range(log[0].sides))]
    for entry in log[1:]:
        current, image_indices = current.extended(entry)
        if entry.merged:
            copies.append(image_indices)
        # a bare image keeps indices, so existing copies remain valid
    if current != ps:
        return None
    return copies
