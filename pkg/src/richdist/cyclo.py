"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are represented as polynomials in zeta = exp(2*pi*i/N) with rational
coefficients, reduced modulo the N-th cyclotomic polynomial Phi_N.  The reduced
coefficient vector is the canonical form: two elements are equal iff their
vectors are identical, which makes exact equality, hashing and set membership
cheap.  Under the embedding zeta -> exp(2*pi*i/N) every element is a complex
number, so the same objects double as exact planar points.

Numeric output never replaces exact arithmetic here: `eval_interval` returns a
box with exact rational endpoints that is guaranteed to contain the true
complex value, and `compare_real` decides the order of two real elements by
refining such boxes until they separate (falling back on exact equality first,
so it always terminates).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath.libmp as _libmp
from mpmath.ctx_iv import MPIntervalContext


class FieldMismatchError(ValueError):
    """Two operands live in cyclotomic fields of different order."""


class NotRealError(ValueError):
    """A real-only operation was applied to a non-real element."""


class EmbeddingError(ValueError):
    """Source field order does not divide the target field order."""


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


# --------------------------------------------------------------------------
# Integer polynomials (constant term first, implicit trailing zeros trimmed)
# --------------------------------------------------------------------------

def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divexact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials; `den` must be monic."""
    num = list(num)
    dd = len(den) - 1
    assert den[-1] == 1, "divisor must be monic"
    quot = [0] * (len(num) - dd)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dd]
        if c:
            quot[i] = c
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    assert not any(num), "division was not exact"
    return quot


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> tuple[int, ...]:
    """Coefficients of Phi_order, constant term first, monic.

    Computed by exact division of x^order - 1 by Phi_d for every proper
    divisor d of order.  The degree of the result is Euler's phi(order).

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    >>> cyclotomic_polynomial(12)
    (1, 0, -1, 0, 1)
    """
    if order < 1:
        raise ValueError("order must be a positive integer")
    poly = [-1] + [0] * (order - 1) + [1]
    for d in _divisors(order):
        if d < order:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


# --------------------------------------------------------------------------
# Interval plumbing
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexBox:
    """Axis-aligned box with exact rational endpoints, containing a complex value."""

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    @property
    def width(self) -> Fraction:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def midpoint(self) -> complex:
        return complex((self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2)

    def contains(self, other: "ComplexBox") -> bool:
        return (self.re_lo <= other.re_lo and other.re_hi <= self.re_hi
                and self.im_lo <= other.im_lo and other.im_hi <= self.im_hi)

    def contains_point(self, re: Fraction, im: Fraction) -> bool:
        return self.re_lo <= re <= self.re_hi and self.im_lo <= im <= self.im_hi


def _ivmpf_to_fractions(x) -> tuple[Fraction, Fraction]:
    lo, hi = x._mpi_
    a = Fraction(*_libmp.to_rational(lo))
    b = Fraction(*_libmp.to_rational(hi))
    return a, b


def _scale_interval(c: Fraction, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    return (c * lo, c * hi) if c >= 0 else (c * hi, c * lo)


# --------------------------------------------------------------------------
# Fields
# --------------------------------------------------------------------------

_FIELD_CACHE: dict[int, "CycloField"] = {}


class CycloField:
    """The cyclotomic field Q(zeta_N) for a fixed order N.

    Holds the reduction data shared by all its elements: the cyclotomic
    polynomial, a table of reduced powers zeta^k, and the matrix of the
    conjugation automorphism zeta -> zeta^(N-1).  Instances are interned by
    order, so identity comparison is safe after `CycloField.of`.
    """

    __slots__ = ("order", "degree", "phi_coeffs", "_powers", "_conj_rows",
                 "_box_cache", "_np_cache")

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("order must be a positive integer")
        self.order = order
        phi = cyclotomic_polynomial(order)
        self.phi_coeffs: tuple[int, ...] = phi
        self.degree = len(phi) - 1
        d = self.degree
        # Reduced powers of zeta for every exponent needed by multiplication
        # (up to 2d-2) and by conjugation/embedding (up to order-1).
        count = max(2 * d - 1, order)
        tail = [-c for c in phi[:d]]  # x^d = tail (Phi is monic)
        powers: list[tuple[int, ...]] = []
        row = [0] * d
        row[0] = 1
        for _ in range(count):
            powers.append(tuple(row))
            top = row[d - 1]
            row = [0] + row[:d - 1]
            if top:
                for i, t in enumerate(tail):
                    row[i] += top * t
        self._powers: tuple[tuple[int, ...], ...] = tuple(powers)
        self._conj_rows: tuple[tuple[int, ...], ...] = tuple(
            powers[(order - j) % order] for j in range(d))
        self._box_cache: dict[int, list[tuple[Fraction, Fraction, Fraction, Fraction]]] = {}
        self._np_cache: dict[str, object] = {}

    @classmethod
    def of(cls, order: int) -> "CycloField":
        field = _FIELD_CACHE.get(order)
        if field is None:
            field = _FIELD_CACHE.setdefault(order, cls(order))
        return field

    # -- constructors -------------------------------------------------------

    def zero(self) -> "CycloNum":
        return CycloNum(self, (_ZERO,) * self.degree)

    def one(self) -> "CycloNum":
        return self.from_rational(1)

    def from_rational(self, value) -> "CycloNum":
        coeffs = [_ZERO] * self.degree
        coeffs[0] = Fraction(value)
        return CycloNum(self, tuple(coeffs))

    def zeta(self, power: int = 1) -> "CycloNum":
        """The root of unity zeta^power, reduced to canonical form."""
        row = self._powers[power % self.order]
        return CycloNum(self, tuple(Fraction(c) for c in row))

    def from_coeffs(self, coeffs: Iterable) -> "CycloNum":
        vec = tuple(Fraction(c) for c in coeffs)
        if len(vec) != self.degree:
            raise ValueError(
                f"expected {self.degree} coefficients for order {self.order}, got {len(vec)}")
        return CycloNum(self, vec)

    # -- reduction helpers ---------------------------------------------------

    def _reduce_int(self, conv: list[int]) -> list[int]:
        """Reduce an integer coefficient vector of length <= 2d-1 mod Phi_N."""
        d = self.degree
        out = list(conv[:d]) + [0] * (d - len(conv[:d]))
        powers = self._powers
        for k in range(d, len(conv)):
            c = conv[k]
            if c:
                row = powers[k]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return out

    # -- certified evaluation -----------------------------------------------

    def _basis_boxes(self, bits: int) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
        """Rational enclosures (re_lo, re_hi, im_lo, im_hi) of zeta^j, j < degree."""
        cached = self._box_cache.get(bits)
        if cached is not None:
            return cached
        ctx = MPIntervalContext()
        ctx.prec = bits
        tau = 2 * ctx.pi
        boxes = []
        for j in range(self.degree):
            angle = tau * j / self.order
            re_lo, re_hi = _ivmpf_to_fractions(ctx.cos(angle))
            im_lo, im_hi = _ivmpf_to_fractions(ctx.sin(angle))
            boxes.append((re_lo, re_hi, im_lo, im_hi))
        self._box_cache[bits] = boxes
        return boxes

    def __eq__(self, other) -> bool:
        return isinstance(other, CycloField) and other.order == self.order

    def __hash__(self) -> int:
        return hash(("CycloField", self.order))

    def __repr__(self) -> str:
        return f"CycloField({self.order})"


_ZERO = Fraction(0)


# --------------------------------------------------------------------------
# Field elements
# --------------------------------------------------------------------------

def _coerce(value, field: CycloField) -> "CycloNum | None":
    if isinstance(value, CycloNum):
        return value
    if isinstance(value, (int, Fraction)):
        return field.from_rational(value)
    return None


def _same_field(a: "CycloNum", b: "CycloNum") -> CycloField:
    if a.field.order != b.field.order:
        raise FieldMismatchError(
            f"operands live in different fields (orders {a.field.order} and {b.field.order}); "
            "embed into a common field first")
    return a.field


def _clear_denominators(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    nums = [c.numerator * (den // c.denominator) for c in coeffs]
    return nums, den


def _int_modular_inverse(a: list[int], modulus: list[int]) -> tuple[list[int], int]:
    """Cofactor t and nonzero constant c with t*a = c (mod modulus), over Z.

    `modulus` must be irreducible over Q with positive degree larger than
    deg(a).  Uses a pseudo-remainder sequence: each elimination step scales by
    the divisor's leading coefficient, which keeps everything integral, and
    the (remainder, cofactor) pair is reduced by its common content, which
    keeps growth in check while preserving remainder = cofactor*a (mod modulus).
    """
    r0, r1 = modulus, list(a)
    t0, t1 = [], [1]
    while len(r1) > 1:
        lead = r1[-1]
        rem, trem = list(r0), list(t0)
        for i in range(len(r0) - len(r1), -1, -1):
            top = rem[len(r1) - 1 + i]
            rem = [lead * c for c in rem]
            trem = [lead * c for c in trem]
            if top:
                for j, rj in enumerate(r1):
                    rem[i + j] -= top * rj
                for j, tj in enumerate(t1):
                    while i + j >= len(trem):
                        trem.append(0)
                    trem[i + j] -= top * tj
        while rem and not rem[-1]:
            rem.pop()
        assert rem, "irreducible modulus cannot share a factor with a"
        content = 0
        for c in rem:
            content = math.gcd(content, c)
        for c in trem:
            content = math.gcd(content, c)
        if content > 1:
            rem = [c // content for c in rem]
            trem = [c // content for c in trem]
        r0, r1, t0, t1 = r1, rem, t1, trem
    return t1, r1[0]


class CycloNum:
    """An element of Q(zeta_N) in canonical reduced form.

    Immutable and hashable.  Arithmetic accepts `int` and `Fraction` operands,
    which are treated as rational constants of the same field.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other, self.field)
        if other is None:
            return NotImplemented
        _same_field(self, other)
        return CycloNum(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self.field)
        if other is None:
            return NotImplemented
        _same_field(self, other)
        return CycloNum(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = _coerce(other, self.field)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return CycloNum(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = _coerce(other, self.field)
        if other is None:
            return NotImplemented
        field = _same_field(self, other)
        d = field.degree
        # Clear denominators so the convolution runs on plain integers.
        na, da = _clear_denominators(self.coeffs)
        nb, db = _clear_denominators(other.coeffs)
        conv = [0] * (2 * d - 1)
        for i, ai in enumerate(na):
            if ai:
                for j, bj in enumerate(nb):
                    if bj:
                        conv[i + j] += ai * bj
        out = field._reduce_int(conv)
        den = da * db
        return CycloNum(field, tuple(Fraction(c, den) for c in out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other, self.field)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other, self.field)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self.inv() if exponent < 0 else self
        result = self.field.one()
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def inv(self) -> "CycloNum":
        """Multiplicative inverse via the extended Euclidean algorithm on (self, Phi_N).

        Runs entirely over the integers: denominators are cleared up front and
        the remainder sequence uses pseudo-division with content stripping, so
        coefficients stay small and no rational gcd churn happens inside the
        loop.  Phi_N is irreducible over Q, hence every nonzero element has an
        inverse.
        """
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        nums, den = _clear_denominators(self.coeffs)
        while nums and not nums[-1]:
            nums.pop()
        content = 0
        for c in nums:
            content = math.gcd(content, c)
        nums = [c // content for c in nums]
        cofactor, constant = _int_modular_inverse(nums, list(self.field.phi_coeffs))
        scale = Fraction(den, content * constant)
        d = self.field.degree
        coeffs = [t * scale for t in cofactor] + [_ZERO] * d
        return CycloNum(self.field, tuple(coeffs[:d]))

    def conj(self) -> "CycloNum":
        """Complex conjugate: the field automorphism zeta -> zeta^(N-1)."""
        d = self.field.degree
        nums, den = _clear_denominators(self.coeffs)
        out = [0] * d
        rows = self.field._conj_rows
        for j, nj in enumerate(nums):
            if nj:
                row = rows[j]
                for i in range(d):
                    if row[i]:
                        out[i] += nj * row[i]
        return CycloNum(self.field, tuple(Fraction(c, den) for c in out))

    # -- structure tests ------------------------------------------------------

    def is_real(self) -> bool:
        return self.conj() == self

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    # -- field embeddings ------------------------------------------------------

    def embed(self, target: CycloField) -> "CycloNum":
        """Rewrite in Q(zeta_M) via zeta_N = zeta_M^(M/N); requires N | M."""
        n, m = self.field.order, target.order
        if m % n != 0:
            raise EmbeddingError(f"order {n} does not divide target order {m}")
        if m == n:
            return CycloNum(target, self.coeffs)
        stride = m // n
        nums, den = _clear_denominators(self.coeffs)
        out = [0] * target.degree
        powers = target._powers
        for j, nj in enumerate(nums):
            if nj:
                row = powers[j * stride]
                for i in range(target.degree):
                    if row[i]:
                        out[i] += nj * row[i]
        return CycloNum(target, tuple(Fraction(c, den) for c in out))

    # -- certified numerics -----------------------------------------------------

    def eval_interval(self, precision_bits: int = 64) -> ComplexBox:
        """A box with exact rational endpoints containing the complex value.

        The enclosures of the basis powers zeta^j are computed with interval
        arithmetic at `precision_bits`; the rational coefficient combination is
        exact, so the only width comes from the basis enclosures and shrinks
        as the precision grows.
        """
        if precision_bits < 16:
            raise ValueError("precision_bits must be at least 16")
        boxes = self.field._basis_boxes(precision_bits)
        re_lo = re_hi = im_lo = im_hi = _ZERO
        for c, (rl, rh, il, ih) in zip(self.coeffs, boxes):
            if c:
                lo, hi = _scale_interval(c, rl, rh)
                re_lo += lo
                re_hi += hi
                lo, hi = _scale_interval(c, il, ih)
                im_lo += lo
                im_hi += hi
        return ComplexBox(re_lo, re_hi, im_lo, im_hi)

    # -- canonical form ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            coerced = _coerce(other, self.field)
            return self.coeffs == coerced.coeffs
        return (isinstance(other, CycloNum)
                and other.field.order == self.field.order
                and other.coeffs == self.coeffs)

    def __hash__(self) -> int:
        return hash((self.field.order, self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __repr__(self) -> str:
        return f"Cyclo({self.field.order}: {self})"

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            coeff = "" if (mag == 1 and j > 0) else str(mag)
            var = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
            sep = "*" if coeff and var else ""
            term = f"{coeff}{sep}{var}"
            parts.append(("- " if c < 0 else "+ " if parts else "") + term)
        return " ".join(parts) if parts else "0"


def join_order(*orders: int) -> int:
    """Order of the smallest field in the lcm lattice containing all operands."""
    return math.lcm(*orders)


# --------------------------------------------------------------------------
# Rigorous float bounds: a cheap filter in front of exact interval refinement
# --------------------------------------------------------------------------

_INF = math.inf


def _f_down(x: Fraction) -> float:
    f = float(x)
    return math.nextafter(f, -_INF) if Fraction(f) > x else f


def _f_up(x: Fraction) -> float:
    f = float(x)
    return math.nextafter(f, _INF) if Fraction(f) < x else f


def _float_basis_re(field: CycloField, bits: int) -> list[tuple[float, float]]:
    cached = field._np_cache.get(("float_re", bits))
    if cached is None:
        boxes = field._basis_boxes(bits)
        cached = [(_f_down(rl), _f_up(rh)) for rl, rh, _, _ in boxes]
        field._np_cache[("float_re", bits)] = cached
    return cached


def real_float_bounds(a: CycloNum, bits: int = 64) -> tuple[float, float]:
    """Rigorous floats lo <= Re(a) <= hi, outward-rounded at every step.

    Much cheaper than `eval_interval` and sound, so callers can rank many real
    values by these bounds and fall back to `compare_real` only where the
    bounds overlap.
    """
    basis = _float_basis_re(a.field, bits)
    lo = hi = 0.0
    for c, (bl, bh) in zip(a.coeffs, basis):
        if not c:
            continue
        cl, ch = _f_down(c), _f_up(c)
        products = (cl * bl, cl * bh, ch * bl, ch * bh)
        lo = math.nextafter(lo + math.nextafter(min(products), -_INF), -_INF)
        hi = math.nextafter(hi + math.nextafter(max(products), _INF), _INF)
    return lo, hi


def compare_real(a: CycloNum, b: CycloNum) -> Ordering:
    """Exact ordering of two real elements.

    Equality is decided on canonical forms; distinct values are separated by
    interval evaluation at doubling precision, which terminates because
    distinct algebraic numbers are a positive distance apart.
    """
    if not a.is_real():
        raise NotRealError(f"{a!r} is not real")
    if not b.is_real():
        raise NotRealError(f"{b!r} is not real")
    if a.field.order != b.field.order:
        target = CycloField.of(join_order(a.field.order, b.field.order))
        a, b = a.embed(target), b.embed(target)
    if a == b:
        return Ordering.EQUAL
    diff = a - b
    bits = 64
    while True:
        box = diff.eval_interval(bits)
        if box.re_lo > 0:
            return Ordering.GREATER
        if box.re_hi < 0:
            return Ordering.LESS
        bits *= 2
