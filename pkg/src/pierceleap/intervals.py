"""Fundamental intervals and the affine digit-prepend maps.

The set of numbers whose expansion starts with a given finite digit block
is an interval with exact rational endpoints: the value of the block and
the value of the block with its last digit bumped by one.  Which endpoint
is closed depends on the parity of the block length and on whether the
block obeys the canonical-tail rule.  Appending one more digit subdivides
the interval; prepending a block to an arbitrary expansion is an affine
map whose slope is plus-or-minus the reciprocal digit product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .codec import decode, encode
from .digits import DigitSeq, classify
from .errors import BadRange, DegenerateInput, EmptyGenerator, NotInImage, OutOfDomain


@dataclass(frozen=True)
class FundamentalInterval:
    """Exact interval of numbers whose expansion begins with ``generator``."""

    generator: DigitSeq
    left: Fraction
    right: Fraction
    left_open: bool
    right_open: bool

    def __post_init__(self) -> None:
        if self.left >= self.right:
            raise DegenerateInput(
                f"fundamental interval must be non-degenerate, got [{self.left}, {self.right}]"
            )

    @property
    def width(self) -> Fraction:
        return self.right - self.left

    def contains_value(self, x: Fraction) -> bool:
        if x < self.left or (x == self.left and self.left_open):
            return False
        if x > self.right or (x == self.right and self.right_open):
            return False
        return True

    def within_open(self, a: Fraction, b: Fraction) -> bool:
        """Openness-aware exact containment in the open interval (a, b)."""
        left_ok = self.left > a or (self.left == a and self.left_open)
        right_ok = self.right < b or (self.right == b and self.right_open)
        return left_ok and right_ok

    def disjoint_from(self, other: "FundamentalInterval") -> bool:
        lo, hi = (self, other) if self.left <= other.left else (other, self)
        if lo.right < hi.left:
            return True
        if lo.right == hi.left:
            return lo.right_open or hi.left_open
        return False


def _bumped(sigma: DigitSeq) -> DigitSeq:
    return DigitSeq(sigma.prefix[:-1] + (sigma.prefix[-1] + 1,))


def fundamental_interval(sigma: DigitSeq) -> FundamentalInterval:
    """Interval with endpoints at ``sigma`` and its last-digit bump.

    Odd-length generators sit on the right endpoint, even-length ones on
    the left; the endpoint carrying the generator's own value is closed
    exactly when the generator is canonical.
    """
    if sigma.extendable:
        sigma = DigitSeq(sigma.prefix)
    if not sigma.prefix:
        raise EmptyGenerator("the empty sequence generates no fundamental interval")
    own = decode(sigma)
    bumped = decode(_bumped(sigma))
    canonical = classify(sigma).canonical
    if len(sigma.prefix) % 2:
        return FundamentalInterval(sigma, bumped, own, True, not canonical)
    return FundamentalInterval(sigma, own, bumped, not canonical, True)


def contains(sigma: DigitSeq, x: Fraction | int) -> bool:
    """Exact membership of ``x`` in the interval generated by ``sigma``.

    The geometric test agrees with the symbolic one: a rational belongs to
    the interval iff its own expansion starts with ``sigma``.
    """
    return fundamental_interval(sigma).contains_value(Fraction(x))


def children(sigma: DigitSeq, j_max: int) -> list[FundamentalInterval]:
    """Subdivision intervals for one extra digit ranging up to ``j_max``."""
    if sigma.extendable:
        sigma = DigitSeq(sigma.prefix)
    if not sigma.prefix:
        raise EmptyGenerator("subdivision needs a non-empty generator")
    last = sigma.prefix[-1]
    if j_max <= last:
        raise BadRange(f"j_max must exceed the last digit {last}, got {j_max}")
    return [
        fundamental_interval(DigitSeq(sigma.prefix + (j,)))
        for j in range(last + 1, j_max + 1)
    ]


@dataclass(frozen=True)
class AffineMap:
    """The linear map that prepends a digit block to an expansion.

    Maps ``x`` to ``value(block) + slope * x`` where the slope is
    ``(-1)^n / (d1...dn)``; it is injective on [0,1] and its image is the
    closed hull of the block's fundamental interval.
    """

    generator: DigitSeq
    offset: Fraction
    slope: Fraction

    @classmethod
    def for_generator(cls, sigma: DigitSeq) -> "AffineMap":
        if sigma.extendable:
            sigma = DigitSeq(sigma.prefix)
        if not sigma.prefix:
            raise EmptyGenerator("affine maps need a non-empty generator")
        n = len(sigma.prefix)
        magnitude = Fraction(1, math.prod(sigma.prefix))
        return cls(sigma, decode(sigma), -magnitude if n % 2 else magnitude)

    def apply(self, x: Fraction | int) -> Fraction:
        x = Fraction(x)
        if x < 0 or x > 1:
            raise OutOfDomain(f"affine map domain is [0, 1], got {x}")
        return self.offset + self.slope * x

    def invert(self, y: Fraction | int) -> Fraction:
        y = Fraction(y)
        x = (y - self.offset) / self.slope
        if x < 0 or x > 1:
            raise NotInImage(f"{y} is outside the image of the map for {self.generator}")
        return x


def affine_apply(sigma: DigitSeq, x: Fraction | int) -> Fraction:
    """Value of the prepend map at ``x``; equals the concatenated expansion
    whenever the last block digit stays below the leading digit of ``x``."""
    return AffineMap.for_generator(sigma).apply(x)


def affine_invert(sigma: DigitSeq, y: Fraction | int) -> Fraction:
    """Exact inverse of :func:`affine_apply` on its image."""
    return AffineMap.for_generator(sigma).invert(y)


def find_interval_within(a: Fraction | int, b: Fraction | int) -> DigitSeq:
    """A generator whose fundamental interval fits inside the open (a, b).

    Strategy: expand the midpoint and try its prefixes from short to long;
    if even the full expansion's interval does not fit, append one digit
    and grow it, which walks the subdivision toward the midpoint.  The
    containment postcondition is re-verified exactly before returning.
    """
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise DegenerateInput(f"need a < b, got a={a}, b={b}")
    if a < 0 or b > 1:
        raise OutOfDomain(f"search interval must lie within [0, 1], got ({a}, {b})")

    midpoint = (a + b) / 2
    digits = encode(midpoint).prefix
    for k in range(1, len(digits) + 1):
        candidate = DigitSeq(digits[:k])
        if fundamental_interval(candidate).within_open(a, b):
            return candidate

    # The midpoint's own expansion ran out: its subdivision accumulates at
    # the midpoint, so a large enough appended digit must fit.
    j = digits[-1] + 1 if digits else 1
    while True:
        candidate = DigitSeq(digits + (j,))
        if fundamental_interval(candidate).within_open(a, b):
            return candidate
        j *= 2
