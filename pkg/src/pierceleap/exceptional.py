"""Constructed digit sequences with prescribed growth and their drift trajectories.

The digit growth rate ``log(d_n)/n`` of typical numbers tends to 1; points
where it tends to some other ``alpha`` are the raw material for extreme
calendar drift.  This module constructs finite prefixes of such sequences,
computes certified growth diagnostics, and follows the drift quotient

    (N*x - L) / sqrt(log N)

along the alternating extremal year counts where the quotient approaches
``1/sqrt(2*alpha)`` from above and below.  Membership in the limiting
classes is asymptotic and never decided here; everything reported is a
finite-horizon quantity with certified bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.random import Generator, Philox

from .codec import encode, enclose
from .digits import INF, DigitSeq
from .enclosure import (
    Enclosure,
    exp_ceil,
    log_enclosure,
    sqrt_enclosure,
    working_bits,
)
from .errors import InsufficientPrefix, OutOfDomain
from .leapyear import IntercalationRule, drift as leap_drift

MAX_CEIL_BITS = 1024


@dataclass(frozen=True)
class GrowthSpec:
    """Target limit of ``log(d_n)/n``: a non-negative rational or infinity."""

    alpha: Fraction | float

    def __post_init__(self) -> None:
        if self.alpha == INF:
            object.__setattr__(self, "alpha", INF)
            return
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha < 0:
            raise OutOfDomain(f"growth targets must be >= 0, got {self.alpha}")

    @property
    def infinite(self) -> bool:
        return self.alpha == INF


def construct_digits(
    spec: GrowthSpec, n: int, bits: int | None = None, max_bits: int = MAX_CEIL_BITS
) -> DigitSeq:
    """Length-``n`` prefix of a sequence whose growth rate tends to ``alpha``.

    Finite positive targets use ``d_k = max(d_{k-1} + 1, ceil(e**(alpha*k)))``;
    the max-guard keeps digits strictly increasing where the exponential
    stalls.  Target 0 uses ``d_k = k + 1`` and infinity uses ``e**(k*k)``
    exponents.  Ceilings are decided by certified enclosures with doubling
    precision, so a digit is emitted only when it is provably correct.
    """
    if n < 1:
        raise OutOfDomain(f"need at least one digit, got n={n}")
    digits: list[int] = []
    previous = 0
    for k in range(1, n + 1):
        if spec.infinite:
            value = exp_ceil(k * k, bits=bits, max_bits=max_bits)
        elif spec.alpha == 0:
            value = k + 1
        else:
            value = exp_ceil(spec.alpha * k, bits=bits, max_bits=max_bits)
        value = max(previous + 1, value)
        digits.append(value)
        previous = value
    return DigitSeq(tuple(digits), extendable=True)


def growth_rate(s: DigitSeq, n: int, bits: int | None = None) -> Enclosure:
    """Certified enclosure of ``log(d_n)/n``."""
    if n < 1:
        raise OutOfDomain(f"growth rate index must be >= 1, got {n}")
    s.require(n)
    return log_enclosure(s.prefix[n - 1], bits=bits).scale(Fraction(1, n))


def log_product_rate(s: DigitSeq, n: int, bits: int | None = None) -> Enclosure:
    """Certified enclosure of ``log(d_1 ... d_n) / (n**2 / 2)``."""
    if n < 1:
        raise OutOfDomain(f"log-product index must be >= 1, got {n}")
    s.require(n)
    return log_enclosure(math.prod(s.prefix[:n]), bits=bits).scale(Fraction(2, n * n))


def reciprocal_partial_sum(s: DigitSeq, n: int) -> Fraction:
    """Exact ``sum(1/d_k for k <= n)``; the empty sum (n = 0) is 0."""
    if n < 0:
        raise OutOfDomain(f"partial-sum length must be >= 0, got {n}")
    s.require(n)
    return sum((Fraction(1, d) for d in s.prefix[:n]), start=Fraction(0))


def extremal_year_at(s: DigitSeq, j: int) -> int:
    """Signed alternating year count ``-1 + d1 - d1*d2 + ... +- d1...dj``."""
    if j < 1:
        raise OutOfDomain(f"extremal years are indexed from 1, got {j}")
    s.require(j)
    total = -1
    product = 1
    for i in range(1, j + 1):
        product *= s.prefix[i - 1]
        total += product if i % 2 else -product
    return total


def extremal_years(s: DigitSeq, r: int) -> tuple[int, int]:
    """The positive extremal pair: odd-index year and negated even-index year.

    The first component grows strictly with ``r`` and stays below the full
    digit product; the second is positive for every ``r >= 1``.
    """
    if r < 1:
        raise OutOfDomain(f"extremal pairs are indexed from 1, got {r}")
    return extremal_year_at(s, 2 * r + 1), -extremal_year_at(s, 2 * r)


def _year_fraction(s: DigitSeq, year: int, guard: int) -> Enclosure:
    """Enclosure of the expanded value using ``guard`` digits past the last
    cumulative product at or below ``year``."""
    if s.terminated:
        return enclose(s, len(s.prefix))
    used = 0
    product = 1
    for digit in s.prefix:
        product *= digit
        if product > year:
            break
        used += 1
    else:
        raise InsufficientPrefix(
            f"digit products stall at {product} <= {year}; more digits needed"
        )
    return enclose(s, used + guard)


def quotient_enclosure(
    s: DigitSeq, year: int, guard: int = 3, bits: int | None = None
) -> Enclosure:
    """Certified drift quotient ``(year*x - L) / sqrt(log year)``.

    The drift is exact rational arithmetic on a bracketing enclosure of the
    expanded value; only the logarithm and square root are outward-rounded.
    Widths shrink as ``guard`` or ``bits`` grow.
    """
    record = drift_record(s, year, guard)
    root = sqrt_enclosure(log_enclosure(year, bits=bits), bits=bits)
    return record.drift.divide_by(root)


def drift_record(s: DigitSeq, year: int, guard: int = 3):
    """Exact leap count and certified drift for the digit-sequence rule."""
    if year < 2:
        raise OutOfDomain(f"drift quotients need year >= 2, got {year}")
    if guard < 1:
        raise OutOfDomain(f"guard must be >= 1, got {guard}")
    x = _year_fraction(s, year, guard)
    return leap_drift(x, IntercalationRule.from_digits(s), year)


def quotient_lower_bound(s: DigitSeq, r: int, bits: int | None = None) -> Enclosure:
    """Certified enclosure of ``(r/4) / sqrt(log N)`` at the r-th odd extremal year.

    This is the provable floor on the drift quotient along the odd branch,
    useful where the quotient itself diverges (growth target 0).
    """
    if r < 1:
        raise OutOfDomain(f"extremal pairs are indexed from 1, got {r}")
    year = extremal_year_at(s, 2 * r + 1)
    root = sqrt_enclosure(log_enclosure(year, bits=bits), bits=bits)
    return Enclosure.point(Fraction(r, 4)).divide_by(root)


@dataclass(frozen=True)
class TrajectoryRow:
    """One certified sample of the drift quotient along an extremal branch."""

    branch: str  # "N" for the odd (limsup) branch, "M" for the even (liminf) branch
    r: int
    year: int
    leap_count: int
    drift: Enclosure
    log_year: Enclosure
    quotient: Enclosure
    thm2_satisfied: bool | None


def trajectory(
    spec: GrowthSpec, r_max: int, guard: int = 3, bits: int | None = None
) -> list[TrajectoryRow]:
    """Drift-quotient rows along both extremal branches for ``r = 1..r_max``.

    Digits are constructed once to length ``2*r_max + 1 + guard``.  Rows are
    emitted odd branch first, then even branch, each ordered by ``r``; rows
    are independent given the digits, so the order is also a contract for
    any parallel evaluation.  ``thm2_satisfied`` records the certified lower
    bound ``drift >= r/4`` and is only defined on the odd branch.
    """
    if r_max < 1:
        raise OutOfDomain(f"need r_max >= 1, got {r_max}")
    if guard < 1:
        raise OutOfDomain(f"guard must be >= 1, got {guard}")
    bits = working_bits(bits)
    digits = construct_digits(spec, 2 * r_max + 1 + guard, bits=bits)

    rows: list[TrajectoryRow] = []
    for branch in ("N", "M"):
        for r in range(1, r_max + 1):
            odd_year, even_year = extremal_years(digits, r)
            year = odd_year if branch == "N" else even_year
            record = drift_record(digits, year, guard)
            log_year = log_enclosure(year, bits=bits)
            quotient = record.drift.divide_by(sqrt_enclosure(log_year, bits=bits))
            thm2 = record.drift.lo >= Fraction(r, 4) if branch == "N" else None
            rows.append(
                TrajectoryRow(
                    branch, r, year, record.leap_count, record.drift, log_year, quotient, thm2
                )
            )
    return rows


@dataclass(frozen=True)
class GrowthSample:
    """One sampled point for the digit-growth statistics."""

    index: int
    digit: int | None  # None when the expansion terminated before the probe index
    rate: float | None


def lln_sample(count: int, bits: int, digit_index: int, seed: int) -> list[GrowthSample]:
    """Sample dyadic rationals and record ``log(d_n)/n`` at a fixed index.

    Numerators are drawn with the Philox counter-based generator (via
    numpy), uniformly over ``[1, 2**bits - 1]``; the value is the numerator
    over ``2**bits``.  Samples whose expansion terminates before the probe
    index carry ``None`` and are excluded from downstream statistics.
    Identical parameters always reproduce identical samples.
    """
    if count < 1 or bits < 1 or digit_index < 1:
        raise OutOfDomain("count, bits, and the digit index must all be >= 1")
    rng = Generator(Philox(key=seed))
    words = (bits + 63) // 64
    modulus = (1 << bits) - 1
    raw = rng.integers(0, (1 << 64) - 1, size=(count, words), dtype=np.uint64, endpoint=True)
    samples: list[GrowthSample] = []
    for index in range(count):
        numerator = 0
        for w in range(words):
            numerator |= int(raw[index, w]) << (64 * w)
        numerator = numerator % modulus + 1
        expansion = encode(Fraction(numerator, 1 << bits))
        if len(expansion.prefix) < digit_index:
            samples.append(GrowthSample(index, None, None))
            continue
        digit = expansion.prefix[digit_index - 1]
        samples.append(GrowthSample(index, digit, math.log(digit) / digit_index))
    return samples
