"""Independent floating-point spectrum used to cross-validate the exact engine.

The oracle computes squared distances from numeric coordinates and clusters
them by a gap threshold, never consulting the exact class structure.  A
cross-check first certifies, with exact interval arithmetic, that the true
distance values are separated by more than three times the clustering
tolerance; only then is a disagreement between the two engines meaningful,
and it is treated as fatal because it proves a bug in exactly one of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cyclo import real_float_bounds
from .geometry import PointSet
from .spectrum import DistanceSpectrum, distance_spectrum

_GAP_REFINE_BITS = (128, 256, 512, 1024, 2048, 4096)


class OracleMismatchError(RuntimeError):
    """Exact and numeric spectra disagree on certified-separated values."""


@dataclass(frozen=True)
class ApproxPointSet:
    """Floating coordinates in the same order as the source points."""

    coords: tuple[tuple[float, float], ...]
    source_precision_bits: int


@dataclass(frozen=True)
class ApproxClass:
    value: float
    multiplicity: int


@dataclass(frozen=True)
class ApproxSpectrum:
    clusters: tuple[ApproxClass, ...]
    total_pairs: int


@dataclass(frozen=True)
class CrossCheckResult:
    matched: bool          # False only for "inconclusive"; mismatch raises
    min_gap: float | None  # certified lower bound on the smallest class gap
    detail: str

    @property
    def verdict(self) -> str:
        return "match" if self.matched else "inconclusive"


def approx_points(ps: PointSet, precision_bits: int = 64) -> ApproxPointSet:
    """Midpoints of the certified evaluation boxes, as floats."""
    if precision_bits < 16:
        raise ValueError("precision_bits must be at least 16")
    coords = []
    for p in ps.points:
        box = p.eval_interval(precision_bits)
        mid = box.midpoint()
        coords.append((mid.real, mid.imag))
    return ApproxPointSet(tuple(coords), precision_bits)


def approx_spectrum(aps: ApproxPointSet, tolerance: float) -> ApproxSpectrum:
    """Cluster the numeric squared distances by consecutive gaps < tolerance."""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    n = len(aps.coords)
    if n < 2:
        return ApproxSpectrum((), 0)
    xy = np.array(aps.coords, dtype=np.float64)
    diff = xy[:, None, :] - xy[None, :, :]
    sq = (diff ** 2).sum(axis=2)
    iu = np.triu_indices(n, k=1)
    values = np.sort(sq[iu])
    clusters = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] >= tolerance:
            chunk = values[start:i]
            clusters.append(ApproxClass(float(chunk.mean()), len(chunk)))
            start = i
    return ApproxSpectrum(tuple(clusters), len(values))


def _certified_min_gap(spectrum: DistanceSpectrum, threshold: float) -> tuple[float | None, bool]:
    """(certified lower bound on the smallest gap, bound > threshold).

    Ranks class values by rigorous float bounds and refines any close pair
    with exact interval evaluation of the difference.  Returns (None, False)
    when some gap cannot be certified above the threshold.
    """
    reps = [c.representative for c in spectrum.classes]
    if len(reps) < 2:
        return math.inf, True
    bounds = [real_float_bounds(r) for r in reps]
    order = sorted(range(len(reps)), key=lambda i: bounds[i][0] + bounds[i][1])
    min_gap = math.inf
    for a, b in zip(order, order[1:]):
        gap_lo = math.nextafter(bounds[b][0] - bounds[a][1], -math.inf)
        if gap_lo <= threshold:
            gap_lo = _refine_gap(reps[a], reps[b], threshold)
            if gap_lo is None:
                return None, False
        min_gap = min(min_gap, gap_lo)
    return min_gap, True


def _refine_gap(rep_a, rep_b, threshold: float):
    diff = rep_b - rep_a
    for bits in _GAP_REFINE_BITS:
        box = diff.eval_interval(bits)
        lo, hi = box.re_lo, box.re_hi
        if lo > 0:
            magnitude_lo, magnitude_hi = lo, hi
        elif hi < 0:
            magnitude_lo, magnitude_hi = -hi, -lo
        else:
            continue  # still straddles zero; refine
        if float(magnitude_lo) > threshold:
            return float(magnitude_lo)
        if float(magnitude_hi) <= threshold:
            return None  # the gap truly is below the threshold
    return None


def cross_check(ps: PointSet, tolerance: float = 1e-9,
                spectrum: DistanceSpectrum | None = None) -> CrossCheckResult:
    """Compare exact and numeric spectra once their separation is certified.

    If the smallest gap between distinct exact class values exceeds
    3*tolerance, the two multiplicity multisets must be identical and any
    difference raises `OracleMismatchError`.  Otherwise the check reports
    "inconclusive" without failing: the numeric engine cannot distinguish
    classes that close.  Pass a precomputed `spectrum` to skip recomputing
    the exact side.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if spectrum is None:
        spectrum = distance_spectrum(ps)
    min_gap, certified = _certified_min_gap(spectrum, 3 * tolerance)
    if not certified:
        return CrossCheckResult(False, None,
                                f"class values are not certified apart at 3*{tolerance:g}")
    numeric = approx_spectrum(approx_points(ps), tolerance)
    exact_mults = sorted(c.multiplicity for c in spectrum.classes)
    numeric_mults = sorted(c.multiplicity for c in numeric.clusters)
    if exact_mults != numeric_mults:
        raise OracleMismatchError(
            "exact and numeric spectra disagree despite certified separation: "
            f"exact multiplicities {exact_mults} vs numeric {numeric_mults}")
    gap = None if min_gap is None or math.isinf(min_gap) else float(min_gap)
    return CrossCheckResult(True, gap,
                            f"{len(spectrum.classes)} classes agree at tolerance {tolerance:g}")
