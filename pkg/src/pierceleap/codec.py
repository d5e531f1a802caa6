"""The Pierce expansion codec.

A number ``x`` in [0,1] is written as the alternating series

    x = 1/d1 - 1/(d1*d2) + 1/(d1*d2*d3) - ...

with strictly increasing positive-integer digits.  The digits come from
iterating the shift map: the leading digit is ``floor(1/x)`` and the next
state is ``1 - floor(1/x) * x``.  Rationals terminate (the digit after the
last is infinite); the greedy algorithm never ends a length >= 2 expansion
with two consecutive integers, which is the canonical-tail rule.

Everything here is exact rational arithmetic.  Enclosures for extendable
sequences come from bracketing the limit between two consecutive partial
sums, which is valid because the terms alternate and strictly decrease.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .digits import INF, DigitSeq
from .enclosure import Enclosure
from .errors import InsufficientPrefix, NonTermination, OutOfDomain

#: Defensive cap on digit extraction; reachable only through arithmetic bugs.
MAX_ENCODE_STEPS = 10**6


def _require_unit_interval(x: Fraction) -> Fraction:
    x = Fraction(x)
    if x < 0 or x > 1:
        raise OutOfDomain(f"expected a rational in [0, 1], got {x}")
    return x


@dataclass(frozen=True)
class StepResult:
    """One application of the digit map: leading digit and shifted remainder.

    ``digit`` is ``floor(1/x)`` for nonzero ``x`` and ``math.inf`` at zero;
    the remainder is ``1 - digit*x``, which always drops strictly below the
    input, so iteration terminates on rationals.
    """

    digit: int | float
    remainder: Fraction


def step(x: Fraction | int) -> StepResult:
    """Extract the leading digit of ``x`` and shift."""
    x = _require_unit_interval(x)
    if x == 0:
        return StepResult(INF, Fraction(0))
    digit = x.denominator // x.numerator
    return StepResult(digit, 1 - digit * x)


def encode(x: Fraction | int) -> DigitSeq:
    """Digit sequence of a rational in [0,1]; ``encode(0)`` is the empty sequence."""
    x = _require_unit_interval(x)
    digits: list[int] = []
    for _ in range(MAX_ENCODE_STEPS):
        if x == 0:
            return DigitSeq(tuple(digits), extendable=False)
        result = step(x)
        digits.append(result.digit)
        x = result.remainder
    raise NonTermination(f"digit extraction did not terminate within {MAX_ENCODE_STEPS} steps")


def decode(s: DigitSeq) -> Fraction:
    """Exact value of a terminated digit sequence (empty decodes to 0)."""
    if s.extendable:
        raise OutOfDomain("decode needs a terminated sequence; use enclose for prefixes")
    return partial_sum(s, len(s.prefix))


def partial_sum(s: DigitSeq, n: int) -> Fraction:
    """Exact n-term partial sum of the alternating digit series."""
    s.require(n)
    total = Fraction(0)
    product = 1
    for k in range(n):
        product *= s.prefix[k]
        term = Fraction(1, product)
        total += term if k % 2 == 0 else -term
    return total


def tail_bound(s: DigitSeq, n: int) -> Fraction:
    """Magnitude of the first omitted term, ``1/(d1...d_{n+1})``.

    This bounds the distance from the n-term partial sum to the limit.  For
    a terminated sequence with ``n`` at or past its length the series has
    ended and the bound is exactly 0.
    """
    if n < 1:
        raise OutOfDomain(f"tail bounds are defined for n >= 1, got {n}")
    if s.terminated and n >= len(s.prefix):
        return Fraction(0)
    try:
        s.require(n + 1)
    except InsufficientPrefix as exc:
        raise InsufficientPrefix(
            f"tail bound at {n} needs digit #{n + 1}: {exc}"
        ) from exc
    return Fraction(1, math.prod(s.prefix[: n + 1]))


def enclose(s: DigitSeq, n: int) -> Enclosure:
    """Certified enclosure of the series limit from ``n`` leading terms.

    Terminated sequences with ``n`` at or past their length give the exact
    point.  Otherwise the limit is bracketed between the n-th and (n+1)-th
    partial sums; the bracket width equals :func:`tail_bound` at ``n``.
    """
    if n < 1:
        raise OutOfDomain(f"enclosures are defined for n >= 1, got {n}")
    if s.terminated and n >= len(s.prefix):
        value = decode(s)
        return Enclosure(value, value)
    s_n = partial_sum(s, n)
    term = tail_bound(s, n)  # magnitude of term n+1; sign is (-1)^n
    s_next = s_n - term if n % 2 else s_n + term
    return Enclosure(min(s_n, s_next), max(s_n, s_next))
