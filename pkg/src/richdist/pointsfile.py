"""Lossless text format for point sets.

Line-oriented and whitespace-separated so files diff cleanly:

    richdist 1
    cyclo N
    points K
    <K lines of phi(N) rationals, written num/den in lowest terms, /1 omitted>

Parsing is exact and strict; errors carry the 1-based line and column of the
offending token.  Provenance is not part of the format, so a parsed set
compares equal to the original on field and points.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .cyclo import CycloField, CycloNum
from .geometry import PointSet

FORMAT_NAME = "richdist"
FORMAT_VERSION = 1

_RATIONAL = re.compile(r"-?\d+(/\d+)?\Z")


class PointsParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def serialize(ps: PointSet) -> str:
    lines = [f"{FORMAT_NAME} {FORMAT_VERSION}",
             f"cyclo {ps.field.order}",
             f"points {len(ps.points)}"]
    for p in ps.points:
        lines.append(" ".join(_write_rational(c) for c in p.coeffs))
    return "\n".join(lines) + "\n"


def _write_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _tokens(line: str) -> list[tuple[int, str]]:
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]


def parse(text: str) -> PointSet:
    lines = text.splitlines()

    def expect_pair(lineno: int, keyword: str) -> tuple[int, str]:
        if lineno > len(lines):
            raise PointsParseError(lineno, 1, f"missing '{keyword}' line")
        toks = _tokens(lines[lineno - 1])
        if len(toks) != 2 or toks[0][1] != keyword:
            raise PointsParseError(lineno, toks[0][0] if toks else 1,
                                   f"expected '{keyword} <value>'")
        return toks[1]

    col, version = expect_pair(1, FORMAT_NAME)
    if version != str(FORMAT_VERSION):
        raise PointsParseError(1, col, f"unsupported format version {version!r}")
    col, order_text = expect_pair(2, "cyclo")
    if not order_text.isdigit() or int(order_text) < 1:
        raise PointsParseError(2, col, f"field order must be a positive integer, got {order_text!r}")
    order = int(order_text)
    col, count_text = expect_pair(3, "points")
    if not count_text.isdigit():
        raise PointsParseError(3, col, f"point count must be a non-negative integer, got {count_text!r}")
    count = int(count_text)

    field = CycloField.of(order)
    width = field.degree
    points: list[CycloNum] = []
    seen: dict[CycloNum, int] = {}
    for k in range(count):
        lineno = 4 + k
        if lineno > len(lines):
            raise PointsParseError(lineno, 1, f"expected {count} coefficient lines, found {k}")
        toks = _tokens(lines[lineno - 1])
        if len(toks) != width:
            raise PointsParseError(lineno, toks[-1][0] if toks else 1,
                                   f"expected {width} coefficients for order {order}, got {len(toks)}")
        coeffs = []
        for col, tok in toks:
            if not _RATIONAL.match(tok):
                raise PointsParseError(lineno, col, f"malformed rational {tok!r}")
            if "/" in tok:
                num_text, den_text = tok.split("/")
                if int(den_text) == 0:
                    raise PointsParseError(lineno, col, f"zero denominator in {tok!r}")
                coeffs.append(Fraction(int(num_text), int(den_text)))
            else:
                coeffs.append(Fraction(int(tok)))
        point = field.from_coeffs(coeffs)
        if point in seen:
            raise PointsParseError(lineno, 1,
                                   f"duplicate point (same as line {4 + seen[point]})")
        seen[point] = k
        points.append(point)
    for lineno in range(4 + count, len(lines) + 1):
        if lines[lineno - 1].strip():
            raise PointsParseError(lineno, 1, "unexpected trailing content")
    return PointSet(field, tuple(points))
