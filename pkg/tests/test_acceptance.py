"""Acceptance suite: every criterion runs exactly, printing one PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timings.  Everything here is zero-tolerance: claims are checked in
exact arithmetic, and the numeric oracle is consulted only after the exact
engine has certified that its class values are separated far beyond the
oracle's clustering tolerance.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from fractions import Fraction

import pytest

from conftest import pairwise_comparison_classes
from richdist.cli import main
from richdist.constructions import build_theorem1, build_theorem2, decompose, verify_claim
from richdist.cyclo import CycloField, cyclotomic_polynomial
from richdist.geometry import (PointSet, Reflection, Rotation, regular_ngon,
                               squared_distance)
from richdist.oracle import cross_check
from richdist.pointsfile import parse, serialize
from richdist.spectrum import (diameter_multiplicity, distance_spectrum,
                               regular_polygon_class_count, rich_classes)


def _report(number: int, name: str, ok: bool, elapsed: float, extra: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    tail = f" ({extra})" if extra else ""
    print(f"ACCEPTANCE {number} {name}: {status} in {elapsed:.2f}s{tail}")


# --------------------------------------------------------------------------
# Shared sweeps (built once, reused by criteria 2/3/5/6/7)
# --------------------------------------------------------------------------

@pytest.fixture(scope="module")
def theorem1_sweep():
    start = time.perf_counter()
    configs = {}
    for n in range(4, 129):
        ps, plan = build_theorem1(n)
        spectrum = distance_spectrum(ps)
        configs[n] = (ps, spectrum)
    return configs, time.perf_counter() - start


@pytest.fixture(scope="module")
def theorem2_sweep():
    start = time.perf_counter()
    configs = {}
    for m in range(1, 6):
        for n in range(m + 3, 81):
            ps, plan = build_theorem2(n, m)
            spectrum = distance_spectrum(ps)
            configs[(n, m)] = (ps, spectrum, plan)
    return configs, time.perf_counter() - start


@pytest.fixture(scope="module")
def polygon_sweep():
    start = time.perf_counter()
    configs = {m: (regular_ngon(m), distance_spectrum(regular_ngon(m)))
               for m in range(3, 101)}
    return configs, time.perf_counter() - start


# --------------------------------------------------------------------------
# Criterion 1: figure reproduction through the CLI, exactly, under a second
# --------------------------------------------------------------------------

def test_criterion_1_figure_reproduction(tmp_path, capsys):
    start = time.perf_counter()
    exit_code = main(["reproduce-figures", "--outdir", str(tmp_path)])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    svgs = sorted(p.name for p in tmp_path.glob("*.svg"))
    ok = (exit_code == 0 and out.count("PASS") == 4 and "FAIL" not in out
          and len(svgs) == 4 and elapsed < 1.0)
    with capsys.disabled():
        _report(1, "figure reproduction (9/2/10, 11/2/12, 10/2/11, 8/1/11)", ok, elapsed)
    assert exit_code == 0 and out.count("PASS") == 4 and "FAIL" not in out
    assert svgs == ["figure-08-1x11.svg", "figure-09-2x10.svg",
                    "figure-10-2x11.svg", "figure-11-2x12.svg"]
    assert elapsed < 1.0


# --------------------------------------------------------------------------
# Criterion 2: n in [4, 128], exactly n points, >= floor(n/4) classes >= n+1
# --------------------------------------------------------------------------

def test_criterion_2_two_copy_sweep(theorem1_sweep):
    configs, build_time = theorem1_sweep
    start = time.perf_counter()
    violations = []
    for n, (ps, spectrum) in configs.items():
        if len(ps) != n:
            violations.append((n, "point count"))
            continue
        if rich_classes(spectrum, n + 1) < n // 4:
            violations.append((n, "rich classes"))
    elapsed = build_time + (time.perf_counter() - start)
    _report(2, "two-copy sweep n in [4,128], exact", not violations, elapsed,
            f"{len(configs)} builds")
    assert not violations, violations
    assert elapsed < 60.0


# --------------------------------------------------------------------------
# Criterion 3: m in [1,5], n in [m+3, 80], point-count identity checked per build
# --------------------------------------------------------------------------

def test_criterion_3_generalized_sweep(theorem2_sweep):
    configs, build_time = theorem2_sweep
    start = time.perf_counter()
    violations = []
    for (n, m), (ps, spectrum, plan) in configs.items():
        k, r = plan.k, plan.r
        if (k, r) != decompose(n, m):
            violations.append((n, m, "decomposition"))
        if (k + 2) + (r - 2) * (k + 1) + (m + 2 - r) * k != n or len(ps) != n:
            violations.append((n, m, "point count identity"))
        if rich_classes(spectrum, n + m) < n // (2 * (m + 1)):
            violations.append((n, m, "rich classes"))
    elapsed = build_time + (time.perf_counter() - start)
    _report(3, "generalized sweep m in [1,5], n in [m+3,80], exact", not violations,
            elapsed, f"{len(configs)} builds")
    assert not violations, violations
    assert elapsed < 300.0


# --------------------------------------------------------------------------
# Criterion 4: regular m-gon class structure for m in [3, 100]
# --------------------------------------------------------------------------

def test_criterion_4_polygon_class_sweep(polygon_sweep):
    configs, build_time = polygon_sweep
    start = time.perf_counter()
    violations = []
    for m in configs:
        if regular_polygon_class_count(m) != (m - 1) // 2:
            violations.append(m)
    elapsed = build_time + (time.perf_counter() - start)
    _report(4, "regular polygon sweep m in [3,100]", not violations, elapsed)
    assert not violations, violations
    assert elapsed < 30.0


# --------------------------------------------------------------------------
# Criterion 5: the largest distance occurs at most n times (criteria 2-3 sets)
# --------------------------------------------------------------------------

def test_criterion_5_diameter_bound(theorem1_sweep, theorem2_sweep):
    start = time.perf_counter()
    violations = []
    for n, (ps, spectrum) in theorem1_sweep[0].items():
        _, mult = diameter_multiplicity(ps, spectrum=spectrum)
        if mult > n:
            violations.append(("two-copy", n, mult))
    for (n, m), (ps, spectrum, _) in theorem2_sweep[0].items():
        _, mult = diameter_multiplicity(ps, spectrum=spectrum)
        if mult > n:
            violations.append(("generalized", n, m, mult))
    elapsed = time.perf_counter() - start
    _report(5, "diameter multiplicity <= n on all constructions", not violations, elapsed)
    assert not violations, violations


# --------------------------------------------------------------------------
# Criterion 6: oracle agreement at tolerance 1e-9 on criteria 1-4 configurations
# --------------------------------------------------------------------------

def test_criterion_6_oracle_agreement(theorem1_sweep, theorem2_sweep, polygon_sweep):
    start = time.perf_counter()
    inconclusive = []
    checked = 0
    for label, (ps, spectrum) in (
            [(f"two-copy n={n}", v) for n, v in theorem1_sweep[0].items()]
            + [(f"generalized n={n} m={m}", v[:2]) for (n, m), v in theorem2_sweep[0].items()]
            + [(f"{m}-gon", v) for m, v in polygon_sweep[0].items()]):
        result = cross_check(ps, tolerance=1e-9, spectrum=spectrum)  # mismatch raises
        checked += 1
        if not result.matched:
            inconclusive.append(label)
    elapsed = time.perf_counter() - start
    _report(6, "exact/numeric agreement at 1e-9", not inconclusive, elapsed,
            f"{checked} configurations, 0 mismatches")
    assert not inconclusive, f"certification failed on: {inconclusive}"


# --------------------------------------------------------------------------
# Criterion 7: property suites
# --------------------------------------------------------------------------

def _random_element(rng: random.Random, field: CycloField):
    return field.from_coeffs([Fraction(rng.randint(-4, 4), rng.randint(1, 4))
                              for _ in range(field.degree)])


def test_criterion_7a_field_laws_randomized():
    rng = random.Random(20260810)
    start = time.perf_counter()
    elements = 0
    iterations = 3400
    for _ in range(iterations):
        field = CycloField.of(rng.randint(1, 60))
        a, b, c = (_random_element(rng, field) for _ in range(3))
        elements += 3
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == field.zero()
        if a:
            assert a * a.inv() == field.one()
        assert a.conj().conj() == a
        assert (a * b).conj() == a.conj() * b.conj()
        assert (a * a.conj()).is_real()
        target = CycloField.of(field.order * rng.choice((2, 3, 4)))
        assert (a + b).embed(target) == a.embed(target) + b.embed(target)
        assert (a * b).embed(target) == a.embed(target) * b.embed(target)
        assert (a.embed(target) == b.embed(target)) == (a == b)
    elapsed = time.perf_counter() - start
    _report(7, "field/conj/inv/embed laws", True, elapsed,
            f"{elements} random elements across N in [1,60]")
    assert elements >= 10 ** 4


def test_criterion_7b_cyclotomic_product_identity():
    start = time.perf_counter()
    for order in range(1, 201):
        product = [1]
        for d in range(1, order + 1):
            if order % d == 0:
                phi = cyclotomic_polynomial(d)
                out = [0] * (len(product) + len(phi) - 1)
                for i, x in enumerate(product):
                    if x:
                        for j, y in enumerate(phi):
                            out[i + j] += x * y
                product = out
        assert product == [-1] + [0] * (order - 1) + [1], order
    _report(7, "cyclotomic product identity N <= 200", True, time.perf_counter() - start)


def test_criterion_7c_spectrum_invariance_randomized():
    rng = random.Random(987654321)
    start = time.perf_counter()
    trials = 120
    for _ in range(trials):
        sides = rng.randint(3, 12)
        ps = regular_ngon(sides)
        before = distance_spectrum(ps)
        assert sum(c.multiplicity for c in before.classes) == sides * (sides - 1) // 2
        if rng.random() < 0.5:
            turn = Fraction(rng.randint(1, 7), 8)
            entry = Rotation(turn=turn, center=rng.randrange(sides), merged=False)
        else:
            i = rng.randrange(sides)
            j = (i + rng.randint(1, sides - 1)) % sides
            entry = Reflection(edge=(i, j), merged=False)
        image, _ = ps.extended(entry)
        after = distance_spectrum(image)
        assert sum(c.multiplicity for c in after.classes) == before.total_pairs
        embedded = Counter({c.representative.embed(image.field): c.multiplicity
                            for c in before.classes})
        assert embedded == Counter({c.representative: c.multiplicity
                                    for c in after.classes})
    _report(7, "spectrum conservation and isometry invariance", True,
            time.perf_counter() - start, f"{trials} random transforms")


def test_criterion_7d_hash_grouping_equals_pairwise():
    start = time.perf_counter()
    small_sets = [regular_ngon(s) for s in range(3, 13)]
    small_sets += [build_theorem1(n)[0] for n in range(4, 13)]
    small_sets += [build_theorem2(n, m)[0]
                   for m in range(1, 6) for n in range(m + 3, 13)]
    for ps in small_sets:
        assert len(ps) <= 12
        expected = Counter(dict(pairwise_comparison_classes(ps.points)))
        got = Counter({c.representative: c.multiplicity
                       for c in distance_spectrum(ps).classes})
        assert got == expected
    _report(7, "hash grouping equals pairwise comparison", True,
            time.perf_counter() - start, f"{len(small_sets)} sets of <= 12 points")


def test_criterion_7e_points_file_round_trips(theorem1_sweep, theorem2_sweep, polygon_sweep):
    start = time.perf_counter()
    count = 0
    for ps, _ in theorem1_sweep[0].values():
        assert parse(serialize(ps)) == ps
        count += 1
    for ps, _, _ in theorem2_sweep[0].values():
        assert parse(serialize(ps)) == ps
        count += 1
    for ps, _ in polygon_sweep[0].values():
        assert parse(serialize(ps)) == ps
        count += 1
    _report(7, "points-file round trip on every generated configuration", True,
            time.perf_counter() - start, f"{count} configurations")
