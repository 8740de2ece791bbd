"""Numeric oracle: coordinates, clustering, and the certified cross-check."""

from __future__ import annotations

import math

import pytest

import richdist.oracle as oracle_module
from richdist.constructions import build_theorem1, build_theorem2
from richdist.cyclo import CycloField
from richdist.geometry import PointSet, regular_ngon
from richdist.oracle import (ApproxPointSet, OracleMismatchError, approx_points,
                             approx_spectrum, cross_check)
from richdist.spectrum import distance_spectrum


def test_square_coordinates():
    aps = approx_points(regular_ngon(4))
    expected = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    for (x, y), (ex, ey) in zip(aps.coords, expected):
        assert abs(x - ex) < 1e-12 and abs(y - ey) < 1e-12


def test_pentagon_vertex_coordinates():
    aps = approx_points(regular_ngon(5))
    x, y = aps.coords[1]
    assert abs(x - math.cos(2 * math.pi / 5)) < 1e-12
    assert abs(y - math.sin(2 * math.pi / 5)) < 1e-12


def test_empty_set_has_no_coordinates():
    F = CycloField.of(4)
    assert approx_points(PointSet(F, ())).coords == ()


def test_precision_floor():
    with pytest.raises(ValueError):
        approx_points(regular_ngon(3), precision_bits=8)


def test_higher_precision_agrees():
    ps, _ = build_theorem2(12, 2)
    coarse = approx_points(ps, 64).coords
    fine = approx_points(ps, 256).coords
    for (x1, y1), (x2, y2) in zip(coarse, fine):
        assert abs(x1 - x2) < 2 ** -60 and abs(y1 - y2) < 2 ** -60


# --------------------------------------------------------------------------
# approx_spectrum
# --------------------------------------------------------------------------

def test_cluster_square():
    spec = approx_spectrum(approx_points(regular_ngon(4)), 1e-9)
    got = [(round(c.value, 9), c.multiplicity) for c in spec.clusters]
    assert got == [(2.0, 4), (4.0, 2)]


def test_cluster_hexagon():
    spec = approx_spectrum(approx_points(regular_ngon(6)), 1e-9)
    got = [(round(c.value, 9), c.multiplicity) for c in spec.clusters]
    assert got == [(1.0, 6), (3.0, 6), (4.0, 3)]


def test_values_closer_than_tolerance_merge():
    aps = ApproxPointSet(((0.0, 0.0), (1.0, 0.0), (2.0 + 1e-12, 1e-13)), 64)
    spec = approx_spectrum(aps, 1e-9)
    # the two unit gaps merge; the span of length ~2 stays separate
    assert sorted(c.multiplicity for c in spec.clusters) == [1, 2]


def test_cluster_requires_positive_tolerance():
    with pytest.raises(ValueError):
        approx_spectrum(approx_points(regular_ngon(3)), 0)


# --------------------------------------------------------------------------
# cross_check
# --------------------------------------------------------------------------

def test_cross_check_square():
    result = cross_check(regular_ngon(4))
    assert result.matched and result.verdict == "match"
    assert result.min_gap == pytest.approx(2.0, abs=1e-9)


def test_cross_check_nine_point_configuration():
    ps, _ = build_theorem1(9)
    assert cross_check(ps).matched


def test_cross_check_accepts_precomputed_spectrum():
    ps, _ = build_theorem1(10)
    spec = distance_spectrum(ps)
    assert cross_check(ps, spectrum=spec).matched


def test_cross_check_huge_tolerance_is_inconclusive():
    result = cross_check(regular_ngon(4), tolerance=10.0)
    assert not result.matched
    assert result.verdict == "inconclusive"


def test_cross_check_trivial_sets_match():
    F = CycloField.of(4)
    assert cross_check(PointSet(F, (F.one(),))).matched


def test_cross_check_mismatch_is_fatal(monkeypatch):
    # Corrupt the numeric side: drop one cluster.  With certified separation
    # this must raise, never pass silently.
    real = oracle_module.approx_spectrum

    def corrupted(aps, tolerance):
        spec = real(aps, tolerance)
        return type(spec)(spec.clusters[1:], spec.total_pairs)

    monkeypatch.setattr(oracle_module, "approx_spectrum", corrupted)
    with pytest.raises(OracleMismatchError):
        cross_check(regular_ngon(4))


def test_cross_check_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        cross_check(regular_ngon(4), tolerance=-1.0)
