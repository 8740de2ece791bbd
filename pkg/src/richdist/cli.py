"""Command-line interface.

Exit codes are a contract for CI gating: 0 means every requested check
passed, 1 means a verification ran and failed, 2 means the invocation or its
input was unusable.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .constructions import (BelowThresholdError, build_theorem1, build_theorem2,
                            verify_claim)
from .geometry import PointSet
from .oracle import OracleMismatchError, cross_check
from .pointsfile import PointsParseError, parse, serialize
from .spectrum import distance_spectrum, spectrum_stats
from .svg import render_svg

USAGE_ERROR = 2
VERIFY_ERROR = 1

# The four bundled demonstration figures: builder arguments and the
# (points, classes, multiplicity) each one must verify exactly.
FIGURES = (
    ("figure-09-2x10", 1, 9, None, 2, 10),
    ("figure-11-2x12", 1, 11, None, 2, 12),
    ("figure-10-2x11", 1, 10, None, 2, 11),
    ("figure-08-1x11", 2, 8, 3, 1, 11),
)


def _load(path: str) -> PointSet:
    return parse(Path(path).read_text(encoding="utf-8"))


def _approx_value(rep) -> float:
    box = rep.eval_interval(64)
    return float((box.re_lo + box.re_hi) / 2)


def _cmd_generate(args) -> int:
    if args.theorem == 1:
        if args.m is not None:
            print("error: --m applies only to --theorem 2", file=sys.stderr)
            return USAGE_ERROR
        ps, _ = build_theorem1(args.n)
    else:
        ps, _ = build_theorem2(args.n, args.m if args.m is not None else 1)
    text = serialize(ps)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify(args) -> int:
    ps = _load(args.file)
    result = verify_claim(ps, args.classes, args.multiplicity)
    if result.passed:
        print(f"PASS: {result.achieved_classes} classes occur at least "
              f"{args.multiplicity} times (required {args.classes})")
        for rep, mult in result.witnesses:
            print(f"  value {rep} ~ {_approx_value(rep):.10f}  multiplicity {mult}")
        return 0
    print(f"FAIL: only {result.achieved_classes} classes reach multiplicity "
          f"{args.multiplicity} (required {args.classes}); best achievable "
          f"multiplicity for {args.classes} classes is {result.best_multiplicity}")
    return VERIFY_ERROR


def _cmd_spectrum(args) -> int:
    ps = _load(args.file)
    spec = distance_spectrum(ps)
    stats = spectrum_stats(spec)
    if args.machine:
        print(f"n={spec.n_points}")
        print(f"order={ps.field.order}")
        print(f"pairs={spec.total_pairs}")
        print(f"classes={stats.distinct_classes}")
        print(f"max_multiplicity={stats.max_multiplicity}")
        for i, c in enumerate(spec.classes):
            print(f"class.{i}.multiplicity={c.multiplicity}")
            print(f"class.{i}.value={c.representative}")
            print(f"class.{i}.approx={_approx_value(c.representative):.10f}")
        if args.histogram:
            for mult in sorted(stats.histogram):
                print(f"histogram.{mult}={stats.histogram[mult]}")
    else:
        print(f"{spec.n_points} points in a field of order {ps.field.order}; "
              f"{spec.total_pairs} pairs in {stats.distinct_classes} exact classes "
              f"(max multiplicity {stats.max_multiplicity})")
        for i, c in enumerate(spec.classes):
            print(f"  class {i}: x{c.multiplicity}  value {c.representative} "
                  f"~ {_approx_value(c.representative):.10f}")
        if args.histogram:
            print("multiplicity histogram:")
            for mult in sorted(stats.histogram):
                print(f"  {mult}: {stats.histogram[mult]}")
    return 0


def _cmd_svg(args) -> int:
    ps = _load(args.file)
    Path(args.output).write_text(render_svg(ps, highlight=args.highlight), encoding="utf-8")
    return 0


def _cmd_oracle(args) -> int:
    ps = _load(args.file)
    result = cross_check(ps, tolerance=args.tol)
    print(f"{result.verdict}: {result.detail}")
    if result.min_gap is not None:
        print(f"certified minimum gap between class values: {result.min_gap:.3e}")
    return 0


def _cmd_reproduce_figures(args) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    all_passed = True
    for name, theorem, n, m, classes, multiplicity in FIGURES:
        ps, _ = build_theorem1(n) if theorem == 1 else build_theorem2(n, m)
        result = verify_claim(ps, classes, multiplicity)
        ok = result.passed and len(ps) == n
        all_passed &= ok
        (outdir / f"{name}.svg").write_text(render_svg(ps, highlight=classes),
                                            encoding="utf-8")
        rows.append((name, n, classes, multiplicity, "PASS" if ok else "FAIL"))
    print(f"{'figure':<16} {'points':>6} {'classes':>7} {'multiplicity':>12}  status")
    for name, n, classes, multiplicity, status in rows:
        print(f"{name:<16} {n:>6} {classes:>7} {multiplicity:>12}  {status}")
    print(f"wrote {len(rows)} SVG files to {outdir}")
    return 0 if all_passed else VERIFY_ERROR


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="richdist",
        description="Construct and exactly verify point sets with many repeated distances.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build a configuration and write it as a points file")
    p.add_argument("--theorem", type=int, choices=(1, 2), required=True,
                   help="1: two copies sharing a vertex/edge; 2: generalized builder")
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--m", type=int, default=None,
                   help="richness surplus for --theorem 2 (default 1)")
    p.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("verify", help="check a rich-distance claim against a points file")
    p.add_argument("file")
    p.add_argument("--classes", type=int, required=True)
    p.add_argument("--multiplicity", type=int, required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("spectrum", help="print the exact distance spectrum of a points file")
    p.add_argument("file")
    p.add_argument("--histogram", action="store_true", help="include the multiplicity histogram")
    p.add_argument("--machine", action="store_true", help="key=value output")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("svg", help="render a points file as an SVG figure")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--highlight", type=int, default=0,
                   help="color the witness segments of this many top classes")
    p.set_defaults(func=_cmd_svg)

    p = sub.add_parser("oracle", help="cross-check the exact spectrum numerically")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("reproduce-figures",
                       help="build the four bundled figures, verify their claims, emit SVGs")
    p.add_argument("--outdir", default="figures")
    p.set_defaults(func=_cmd_reproduce_figures)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code else 0
    try:
        return args.func(args)
    except OracleMismatchError as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return VERIFY_ERROR
    except (PointsParseError, BelowThresholdError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
