"""Exact distance-multiset analysis.

All n(n-1)/2 squared pairwise distances of a point set are grouped into exact
equality classes by hashing their canonical coefficient vectors.  Squared
distances stay inside the field, so no square roots and no tolerances appear
anywhere; a class is a class because the vectors are identical.

The hot path clears denominators once per point and runs the pairwise
convolution-and-reduce on int64 numpy blocks.  An a-priori bound computed in
arbitrary precision guarantees the block arithmetic cannot overflow; inputs
that exceed the bound take the plain exact path instead.  Pair enumeration is
chunked, and chunks may be mapped over worker threads; the merge is by chunk
order, so the result is byte-identical however the work is partitioned.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclo import CycloField, CycloNum, Ordering, compare_real, real_float_bounds
from .geometry import PointSet, regular_ngon, squared_distance

_CHUNK = 4096
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class DistanceClass:
    representative: CycloNum
    multiplicity: int
    witnesses: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class DistanceSpectrum:
    """Equality classes of squared distances, in first-witness order."""

    classes: tuple[DistanceClass, ...]
    total_pairs: int
    n_points: int

    def multiplicities(self) -> list[int]:
        return [c.multiplicity for c in self.classes]


def _worker_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    try:
        return max(1, int(os.environ.get("RICHDIST_THREADS", "1")))
    except ValueError:
        return 1


def _int_matrix(ps: PointSet) -> tuple[list[list[int]], list[int]]:
    """Numerator rows and per-point denominators after clearing fractions."""
    rows, dens = [], []
    for p in ps.points:
        den = 1
        for c in p.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        rows.append([c.numerator * (den // c.denominator) for c in p.coeffs])
        dens.append(den)
    return rows, dens


def _field_arrays(field: CycloField) -> tuple[np.ndarray, np.ndarray, int]:
    """Conjugation matrix, tail-reduction matrix, and max L1 norm of a reduction row."""
    cached = field._np_cache.get("spectrum")
    if cached is None:
        d = field.degree
        conj = np.array(field._conj_rows, dtype=np.int64).reshape(d, d)
        tail = field._powers[d:2 * d - 1]
        reduce_rows = np.array(tail, dtype=np.int64).reshape(len(tail), d)
        max_l1 = max((sum(abs(c) for c in row) for row in tail), default=0)
        cached = (conj, reduce_rows, max_l1)
        field._np_cache["spectrum"] = cached
    return cached


def _spectrum_chunk(args):
    """Group one contiguous pair range; returns keyed records in pair order."""
    P, CP, dens, I, J, reduce_rows, d, uniform_den = args
    U = P[I] * dens[J, None] - P[J] * dens[I, None]
    V = CP[I] * dens[J, None] - CP[J] * dens[I, None]
    m = len(I)
    full = np.zeros((m, 2 * d - 1), dtype=np.int64)
    for k in range(d):
        col = U[:, k:k + 1]
        full[:, k:k + d] += col * V
    red = full[:, :d]
    if d > 1:
        red = red + full[:, d:] @ reduce_rows
    groups: dict[bytes, list] = {}
    if uniform_den:
        for r in range(m):
            key = red[r].tobytes()
            rec = groups.get(key)
            if rec is None:
                groups[key] = [tuple(int(c) for c in red[r]), 1, 1, [(int(I[r]), int(J[r]))]]
            else:
                rec[1] += 1
                rec[3].append((int(I[r]), int(J[r])))
    else:
        pair_dens = (dens[I] * dens[J]).tolist()
        for r in range(m):
            den = pair_dens[r] * pair_dens[r]
            vec = [int(c) for c in red[r]]
            g = den
            for c in vec:
                g = math.gcd(g, c)
                if g == 1:
                    break
            if g > 1:
                den //= g
                vec = [c // g for c in vec]
            key = repr((den, vec)).encode()
            rec = groups.get(key)
            if rec is None:
                groups[key] = [tuple(vec), den, 1, [(int(I[r]), int(J[r]))]]
            else:
                rec[2] += 1
                rec[3].append((int(I[r]), int(J[r])))
    # normalize record layout: (key, vec, den, count, witnesses)
    out = []
    for key, rec in groups.items():
        if uniform_den:
            vec, count, witnesses = rec[0], rec[1], rec[3]
            out.append((key, vec, 1, count, witnesses))
        else:
            out.append((key, rec[0], rec[1], rec[2], rec[3]))
    return out


def distance_spectrum(ps: PointSet, witness_cap: int | None = None,
                      workers: int | None = None) -> DistanceSpectrum:
    """Exact equality classes of all squared pairwise distances.

    Classes are ordered by their first witness pair in lexicographic order and
    multiplicities always sum to n(n-1)/2.  `witness_cap` truncates the stored
    witness lists (multiplicities stay exact); `workers` overrides the
    RICHDIST_THREADS partitioning width.
    """
    n = len(ps.points)
    total_pairs = n * (n - 1) // 2
    if total_pairs == 0:
        return DistanceSpectrum((), 0, n)
    field = ps.field
    d = field.degree

    rows, dens = _int_matrix(ps)
    conj, reduce_rows, max_l1 = _field_arrays(field)
    max_num = max((abs(c) for row in rows for c in row), default=0)
    conj_l1 = max((sum(abs(int(c)) for c in conj[:, i]) for i in range(d)), default=1)
    max_conj = max_num * conj_l1
    max_den = max(dens)
    bound_u = 2 * max_num * max_den
    bound_v = 2 * max_conj * max_den
    bound = d * bound_u * bound_v * (1 + max_l1)

    if bound >= _INT64_SAFE:
        return _exact_spectrum(ps, witness_cap)

    P = np.array(rows, dtype=np.int64)
    CP = P @ conj
    dens_arr = np.array(dens, dtype=np.int64)
    uniform_den = max_den == 1
    I, J = np.triu_indices(n, k=1)

    tasks = [(P, CP, dens_arr, I[s:s + _CHUNK], J[s:s + _CHUNK], reduce_rows, d, uniform_den)
             for s in range(0, total_pairs, _CHUNK)]
    nworkers = _worker_count(workers)
    if nworkers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            chunk_results = list(pool.map(_spectrum_chunk, tasks))
    else:
        chunk_results = [_spectrum_chunk(t) for t in tasks]

    merged: dict[bytes, list] = {}
    order: list[bytes] = []
    for result in chunk_results:
        for key, vec, den, count, witnesses in result:
            rec = merged.get(key)
            if rec is None:
                merged[key] = [vec, den, count, witnesses]
                order.append(key)
            else:
                rec[2] += count
                rec[3].extend(witnesses)

    classes = []
    for key in order:
        vec, den, count, witnesses = merged[key]
        rep = CycloNum(field, tuple(Fraction(c, den) for c in vec))
        if witness_cap is not None:
            witnesses = witnesses[:witness_cap]
        classes.append(DistanceClass(rep, count, tuple(witnesses)))
    assert sum(c.multiplicity for c in classes) == total_pairs
    return DistanceSpectrum(tuple(classes), total_pairs, n)


def _exact_spectrum(ps: PointSet, witness_cap: int | None) -> DistanceSpectrum:
    """Plain-arithmetic path for inputs outside the int64 safety bound."""
    n = len(ps.points)
    merged: dict[tuple, list] = {}
    order = []
    for i in range(n):
        for j in range(i + 1, n):
            sq = squared_distance(ps.points[i], ps.points[j])
            key = sq.coeffs
            rec = merged.get(key)
            if rec is None:
                merged[key] = [sq, 1, [(i, j)]]
                order.append(key)
            else:
                rec[1] += 1
                rec[2].append((i, j))
    classes = []
    for key in order:
        rep, count, witnesses = merged[key]
        if witness_cap is not None:
            witnesses = witnesses[:witness_cap]
        classes.append(DistanceClass(rep, count, tuple(witnesses)))
    return DistanceSpectrum(tuple(classes), n * (n - 1) // 2, n)


def rich_classes(spectrum: DistanceSpectrum, q: int) -> int:
    """Number of distance classes occurring at least q times."""
    if q < 1:
        raise ValueError("q must be at least 1")
    return sum(1 for c in spectrum.classes if c.multiplicity >= q)


def regular_polygon_class_count(m: int) -> int:
    """Verified count of full-multiplicity distance classes of a regular m-gon.

    Asserts the exact spectrum shape: floor((m-1)/2) classes of multiplicity
    exactly m and, for even m, one further class (the diameter) of
    multiplicity m/2.  Any other shape signals a bug in the arithmetic core.
    """
    if m < 3:
        raise ValueError("m must be at least 3")
    spec = distance_spectrum(regular_ngon(m))
    expected = (m - 1) // 2
    full = [c for c in spec.classes if c.multiplicity == m]
    if len(full) != expected:
        raise AssertionError(
            f"regular {m}-gon: {len(full)} classes of multiplicity {m}, expected {expected}")
    if m % 2 == 0:
        halves = [c for c in spec.classes if c.multiplicity == m // 2]
        if len(spec.classes) != expected + 1 or len(halves) != 1:
            raise AssertionError(f"regular {m}-gon: unexpected spectrum shape")
        diameter, _ = diameter_multiplicity(regular_ngon(m))
        if halves[0].representative != diameter:
            raise AssertionError(f"regular {m}-gon: half-multiplicity class is not the diameter")
    elif len(spec.classes) != expected:
        raise AssertionError(f"regular {m}-gon: unexpected spectrum shape")
    return expected


def diameter_multiplicity(ps: PointSet,
                          spectrum: DistanceSpectrum | None = None) -> tuple[CycloNum, int]:
    """The largest squared distance and how often it occurs.

    Candidates are ranked by rigorous float bounds; exact `compare_real`
    adjudicates only where the bounds overlap, so the result is certified.
    Pass a precomputed `spectrum` to skip recomputing it.
    """
    if len(ps.points) < 2:
        raise ValueError("diameter needs at least 2 points")
    spec = spectrum if spectrum is not None else distance_spectrum(ps)
    reps = [c.representative for c in spec.classes]
    bounds = [real_float_bounds(r) for r in reps]
    best_lo = max(lo for lo, _ in bounds)
    candidates = [i for i, (_, hi) in enumerate(bounds) if hi >= best_lo]
    best = candidates[0]
    for i in candidates[1:]:
        if compare_real(reps[i], reps[best]) is Ordering.GREATER:
            best = i
    return reps[best], spec.classes[best].multiplicity


@dataclass(frozen=True)
class SpectrumStats:
    distinct_classes: int
    max_multiplicity: int
    histogram: dict[int, int]
    classes_at_most_n: int  # occur at least once but at most n times (informational)


def spectrum_stats(spectrum: DistanceSpectrum) -> SpectrumStats:
    """Distinct-class count, maximum multiplicity and the multiplicity histogram."""
    histogram: dict[int, int] = {}
    for c in spectrum.classes:
        histogram[c.multiplicity] = histogram.get(c.multiplicity, 0) + 1
    max_mult = max((c.multiplicity for c in spectrum.classes), default=0)
    at_most_n = sum(1 for c in spectrum.classes if c.multiplicity <= spectrum.n_points)
    return SpectrumStats(len(spectrum.classes), max_mult, histogram, at_most_n)
