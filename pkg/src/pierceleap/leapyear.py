"""Generalized leap-year intercalation rules and exact drift accounting.

A rule is a sequence of positive integers (at least 2 from the second term
on).  Year ``N`` is a leap year when the alternating sum of divisibility
indicators of the cumulative term products equals one; the count of leap
years up to ``N`` also has a closed form as an alternating sum of floor
divisions.  Both paths are implemented and tested against each other.

Because cumulative products at least double from the second term on, every
sum over an infinite rule truncates exactly at the first product beyond the
year in question; a rule backed by a finite prefix of an infinite digit
sequence raises :class:`~pierceleap.errors.InsufficientPrefix` if its
products run out before that point.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator

from .codec import decode
from .digits import DigitSeq
from .enclosure import Enclosure
from .errors import InsufficientPrefix, OutOfDomain

#: Fractional part of the mean tropical year length in days.
TROPICAL_YEAR_FRACTION = Fraction(242189, 1000000)


class RuleKind(Enum):
    EXPLICIT = "explicit"
    PIERCE_DERIVED = "pierceDerived"
    PERIODIC = "periodic"


def _check_rule_terms(terms: tuple[int, ...], what: str) -> None:
    if not terms:
        raise OutOfDomain(f"{what} must be non-empty")
    for k, term in enumerate(terms, start=1):
        if not isinstance(term, int) or isinstance(term, bool) or term < 1:
            raise OutOfDomain(f"{what} term #{k} must be a positive integer, got {term!r}")
        if k >= 2 and term < 2:
            raise OutOfDomain(f"{what} term #{k} must be >= 2, got {term}")


@dataclass(frozen=True)
class IntercalationRule:
    """A leap-year rule: finite term list, digit-sequence prefix, or
    a finite head repeated-last-term forever (for rules like 2,2,2,...)."""

    terms: tuple[int, ...]
    kind: RuleKind
    digits: DigitSeq | None = None

    @classmethod
    def explicit(cls, terms) -> "IntercalationRule":
        terms = tuple(terms)
        _check_rule_terms(terms, "rule")
        return cls(terms, RuleKind.EXPLICIT)

    @classmethod
    def from_digits(cls, digits: DigitSeq) -> "IntercalationRule":
        if not digits.prefix:
            raise OutOfDomain("a digit-sequence rule needs at least one digit")
        if digits.prefix[0] < 1 or (len(digits.prefix) > 1 and digits.prefix[1] < 2):
            raise OutOfDomain("digit-sequence rules need terms >= 2 from the second on")
        return cls(digits.prefix, RuleKind.PIERCE_DERIVED, digits)

    @classmethod
    def repeat_last(cls, terms) -> "IntercalationRule":
        terms = tuple(terms)
        _check_rule_terms(terms, "rule")
        if terms[-1] < 2:
            raise OutOfDomain("the repeated term must be >= 2 for the series to converge")
        return cls(terms, RuleKind.PERIODIC)

    @property
    def finite(self) -> bool:
        if self.kind is RuleKind.EXPLICIT:
            return True
        if self.kind is RuleKind.PIERCE_DERIVED:
            return self.digits.terminated
        return False

    def term(self, k: int) -> int:
        """1-indexed rule term; periodic rules repeat their last term."""
        if k < 1:
            raise OutOfDomain(f"rule terms are 1-indexed, got {k}")
        if k <= len(self.terms):
            return self.terms[k - 1]
        if self.kind is RuleKind.PERIODIC:
            return self.terms[-1]
        if self.finite:
            raise InsufficientPrefix(f"finite rule has only {len(self.terms)} terms")
        raise InsufficientPrefix(
            f"rule prefix has {len(self.terms)} terms; term #{k} is not available"
        )

    def products_through(self, limit: int) -> Iterator[int]:
        """Cumulative term products not exceeding ``limit``, in order.

        Stops exactly at the first product beyond ``limit`` (later products
        are even larger).  Raises InsufficientPrefix when a non-finite rule
        runs out of known terms before crossing ``limit``.
        """
        product = 1
        k = 0
        while True:
            k += 1
            try:
                product *= self.term(k)
            except InsufficientPrefix:
                if self.finite:
                    return
                raise InsufficientPrefix(
                    f"rule products stall at {product} <= {limit}; more terms needed"
                )
            if product > limit:
                return
            yield product


def mul(m: int, n: int) -> int:
    """Divisibility indicator: 1 when ``m`` is an integer multiple of ``n``."""
    if m < 1 or n < 1:
        raise OutOfDomain(f"mul is defined on positive integers, got ({m}, {n})")
    return 1 if m % n == 0 else 0


def is_leap(rule: IntercalationRule, year: int) -> bool:
    """Alternating divisibility sum over cumulative products equals one."""
    if year < 1:
        raise OutOfDomain(f"years are counted from 1, got {year}")
    total = 0
    sign = 1
    for product in rule.products_through(year):
        if year % product == 0:
            total += sign
        sign = -sign
    return total == 1


def count_leaps_direct(rule: IntercalationRule, n: int) -> int:
    """Leap-year count over years 1..n straight from the definition."""
    if n < 1:
        raise OutOfDomain(f"years are counted from 1, got {n}")
    products = list(rule.products_through(n))
    count = 0
    for year in range(1, n + 1):
        total = 0
        sign = 1
        for product in products:
            if product > year:
                break
            if year % product == 0:
                total += sign
            sign = -sign
        if total == 1:
            count += 1
    return count


def count_leaps_formula(rule: IntercalationRule, n: int) -> int:
    """Leap-year count as the alternating sum of floor divisions."""
    if n < 1:
        raise OutOfDomain(f"years are counted from 1, got {n}")
    total = 0
    sign = 1
    for product in rule.products_through(n):
        total += sign * (n // product)
        sign = -sign
    return total


def series_value(rule: IntercalationRule, n: int = 1) -> Enclosure:
    """Average fraction of a leap day per year under the rule.

    Finite rules give the exact alternating sum of reciprocal products.
    Infinite rules are bracketed between the ``n``-th and ``(n+1)``-th
    partial sums, valid because products strictly increase so the series
    alternates with decreasing terms.
    """
    if n < 1:
        raise OutOfDomain(f"partial-sum index must be >= 1, got {n}")
    if rule.finite:
        total = Fraction(0)
        product = 1
        for k, term_value in enumerate(rule.terms, start=1):
            product *= term_value
            term = Fraction(1, product)
            total += term if k % 2 else -term
        return Enclosure(total, total)
    total = Fraction(0)
    product = 1
    for k in range(1, n + 1):
        product *= rule.term(k)
        term = Fraction(1, product)
        total += term if k % 2 else -term
    next_term = Fraction(1, product * rule.term(n + 1))
    bracket = total - next_term if n % 2 else total + next_term
    return Enclosure(min(total, bracket), max(total, bracket))


@dataclass(frozen=True)
class DriftRecord:
    """Leap count and certified drift ``N*x - L`` at a given year."""

    year: int
    leap_count: int
    drift: Enclosure


def drift(x: Enclosure, rule: IntercalationRule, n: int) -> DriftRecord:
    """Exact drift record at year ``n`` for the year-fraction enclosure ``x``."""
    if n < 1:
        raise OutOfDomain(f"years are counted from 1, got {n}")
    if x.lo < 0 or x.hi > 1:
        raise OutOfDomain(f"the year fraction must lie within [0, 1], got {x}")
    leaps = count_leaps_formula(rule, n)
    return DriftRecord(n, leaps, Enclosure(n * x.lo - leaps, n * x.hi - leaps))


JULIAN = IntercalationRule.explicit((4,))
GREGORIAN = IntercalationRule.explicit((4, 25, 4))

_PRESETS = {"julian": JULIAN, "gregorian": GREGORIAN}


def parse_rule(text: str) -> IntercalationRule:
    """Parse a preset name or comma-separated terms into a rule.

    A trailing ``...`` marks an infinite tail: strictly increasing terms
    become a digit-sequence-backed rule (more terms must be supplied for
    far-horizon queries), anything else repeats its last term forever.
    """
    text = text.strip()
    preset = _PRESETS.get(text.lower())
    if preset is not None:
        return preset
    endless = False
    body = text
    if body.endswith("..."):
        endless = True
        body = body[: -len("...")].rstrip(",")
    try:
        terms = tuple(int(part) for part in body.split(",") if part.strip() != "")
    except ValueError as exc:
        raise OutOfDomain(f"cannot parse rule from {text!r}") from exc
    if not endless:
        return IntercalationRule.explicit(terms)
    if all(a < b for a, b in zip(terms, terms[1:])):
        return IntercalationRule.from_digits(DigitSeq(terms, extendable=True))
    return IntercalationRule.repeat_last(terms)
