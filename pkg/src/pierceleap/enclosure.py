"""Certified enclosures with exact rational endpoints.

An :class:`Enclosure` is a pair of reduced fractions ``lo <= hi`` asserting
that some real quantity lies in ``[lo, hi]``.  All interval combination in
this package (sums, scaling, division by a positive interval) is exact
rational arithmetic; rounding enters only through the transcendental
primitives below, which delegate to mpmath's outward-rounded interval
context and convert the dyadic endpoints back to fractions exactly.

Square roots never touch mpmath: they come from ``math.isqrt`` on scaled
integers, which gives dyadic bounds with a one-ulp gap by construction.

Working precision defaults to 128 bits, can be overridden per call or via
the ``PIERCE_PRECISION`` environment variable, and integer-ceiling queries
retry with doubled precision up to 1024 bits before giving up.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from mpmath import iv

from .errors import OutOfDomain, PrecisionExhausted

DEFAULT_BITS = 128
MAX_BITS = 1024


def working_bits(bits: int | None = None) -> int:
    """Resolve the working precision: explicit arg, else env, else default."""
    if bits is not None:
        if bits < 4:
            raise OutOfDomain(f"precision must be at least 4 bits, got {bits}")
        return bits
    env = os.environ.get("PIERCE_PRECISION")
    if env:
        return working_bits(int(env))
    return DEFAULT_BITS


@dataclass(frozen=True)
class Enclosure:
    """Pair of exact rational bounds certifying ``lo <= value <= hi``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise OutOfDomain(f"enclosure bounds out of order: {self.lo} > {self.hi}")

    @classmethod
    def point(cls, value: Fraction | int) -> "Enclosure":
        value = Fraction(value)
        return cls(value, value)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, value: Fraction | int) -> bool:
        return self.lo <= value <= self.hi

    def contains_enclosure(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def shift(self, offset: Fraction | int) -> "Enclosure":
        return Enclosure(self.lo + offset, self.hi + offset)

    def scale(self, factor: Fraction | int) -> "Enclosure":
        factor = Fraction(factor)
        if factor >= 0:
            return Enclosure(self.lo * factor, self.hi * factor)
        return Enclosure(self.hi * factor, self.lo * factor)

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def divide_by(self, denominator: "Enclosure") -> "Enclosure":
        """Exact interval division; the denominator must be strictly positive."""
        if denominator.lo <= 0:
            raise OutOfDomain(
                f"interval division needs a strictly positive denominator, got {denominator}"
            )
        quotients = (
            self.lo / denominator.lo,
            self.lo / denominator.hi,
            self.hi / denominator.lo,
            self.hi / denominator.hi,
        )
        return Enclosure(min(quotients), max(quotients))


def _mpf_raw_to_fraction(raw) -> Fraction:
    sign, mantissa, exponent, _ = raw
    mantissa, exponent = int(mantissa), int(exponent)
    if mantissa == 0:
        if exponent == 0:
            return Fraction(0)
        raise PrecisionExhausted("non-finite bound produced by interval arithmetic")
    value = Fraction(mantissa) * Fraction(2) ** exponent
    return -value if sign else value


def _iv_bounds(interval) -> tuple[Fraction, Fraction]:
    raw_lo, raw_hi = interval._mpi_
    return _mpf_raw_to_fraction(raw_lo), _mpf_raw_to_fraction(raw_hi)


def _iv_from_fraction(x: Fraction):
    # Integer conversion rounds outward at the current precision; the
    # division is outward-rounded interval division, so the result encloses x.
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def exp_enclosure(x: Fraction | int, bits: int | None = None) -> Enclosure:
    """Certified enclosure of ``e**x`` for exact rational ``x``."""
    x = Fraction(x)
    if x == 0:
        return Enclosure.point(1)
    old = iv.prec
    try:
        iv.prec = working_bits(bits)
        lo, hi = _iv_bounds(iv.exp(_iv_from_fraction(x)))
    finally:
        iv.prec = old
    return Enclosure(lo, hi)


def log_enclosure(x: Fraction | int, bits: int | None = None) -> Enclosure:
    """Certified enclosure of the natural log of a positive exact rational."""
    x = Fraction(x)
    if x <= 0:
        raise OutOfDomain(f"log needs a positive argument, got {x}")
    if x == 1:
        return Enclosure.point(0)
    old = iv.prec
    try:
        iv.prec = working_bits(bits)
        lo, hi = _iv_bounds(iv.log(_iv_from_fraction(x)))
    finally:
        iv.prec = old
    return Enclosure(lo, hi)


def _sqrt_lower(x: Fraction, bits: int) -> Fraction:
    scale = 1 << (2 * bits)
    return Fraction(math.isqrt(x.numerator * scale // x.denominator), 1 << bits)


def _sqrt_upper(x: Fraction, bits: int) -> Fraction:
    scale = 1 << (2 * bits)
    scaled = -((-x.numerator * scale) // x.denominator)  # ceil(x * scale)
    root = math.isqrt(scaled)
    if root * root == scaled and scaled * x.denominator == x.numerator * scale:
        return Fraction(root, 1 << bits)
    return Fraction(root + 1, 1 << bits)


def sqrt_enclosure(x: Fraction | Enclosure, bits: int | None = None) -> Enclosure:
    """Certified square root via integer square roots on scaled numerators."""
    bits = working_bits(bits)
    if isinstance(x, Enclosure):
        lo, hi = x.lo, x.hi
    else:
        lo = hi = Fraction(x)
    if lo < 0:
        raise OutOfDomain(f"sqrt needs a non-negative argument, got lower bound {lo}")
    return Enclosure(_sqrt_lower(lo, bits), _sqrt_upper(hi, bits))


def exp_ceil(x: Fraction | int, bits: int | None = None, max_bits: int = MAX_BITS) -> int:
    """``ceil(e**x)`` decided by enclosure, doubling precision on ambiguity.

    Raises :class:`PrecisionExhausted` when the enclosure still straddles an
    integer at ``max_bits`` (for rational ``x != 0`` the value is irrational,
    so this only happens when the budget genuinely runs out).
    """
    x = Fraction(x)
    current = working_bits(bits)
    while True:
        enc = exp_enclosure(x, bits=current)
        lo_ceil = -((-enc.lo.numerator) // enc.lo.denominator)
        hi_ceil = -((-enc.hi.numerator) // enc.hi.denominator)
        if lo_ceil == hi_ceil:
            return int(hi_ceil)
        if current >= max_bits:
            raise PrecisionExhausted(
                f"ceil(e**{x}) still ambiguous at {current} bits: [{enc.lo}, {enc.hi}]"
            )
        current = min(2 * current, max_bits)


def decimal_str(value: Fraction, digits: int = 6) -> str:
    """Round-to-nearest decimal rendering (display only, never exact)."""
    with localcontext() as ctx:
        ctx.prec = digits
        quotient = Decimal(value.numerator) / Decimal(value.denominator)
    return str(quotient)


def format_rational(value: Fraction) -> str:
    """Serialize as ``p/q`` (always reduced, denominator always shown)."""
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, a bare integer, or a decimal literal into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise OutOfDomain(f"cannot parse rational from {text!r}") from exc
