"""Digit-sequence domain types, classification, and bounded-digit enumeration.

A digit sequence is a strictly increasing tuple of positive integers with a
tail marker: ``terminated`` sequences stand for themselves (the expansion of
a rational, padded conceptually with infinity markers), while ``extendable``
sequences are finite prefixes of an infinite strictly increasing sequence.
Every operation that consumes an extendable sequence declares how far into
the prefix it reads and raises :class:`~pierceleap.errors.InsufficientPrefix`
rather than silently inventing entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    IllFormedReplacement,
    InsufficientPrefix,
    MalformedTail,
    NotMonotone,
    OutOfDomain,
    ThetaViolation,
)

#: Marker for the infinite digit that pads terminated sequences.
INF = math.inf


def _check_strictly_increasing(entries: Sequence[int], what: str) -> None:
    prev = 0
    for k, entry in enumerate(entries, start=1):
        if not isinstance(entry, int) or isinstance(entry, bool) or entry < 1:
            raise NotMonotone(f"{what} entry #{k} must be a positive integer, got {entry!r}")
        if entry <= prev:
            raise NotMonotone(f"{what} is not strictly increasing at position {k}: {prev} -> {entry}")
        prev = entry


@dataclass(frozen=True)
class DigitSeq:
    """Strictly increasing positive-integer prefix plus a tail marker.

    The empty terminated sequence represents the expansion of 0 (the all-
    infinity sequence).  Empty extendable sequences carry no information and
    are rejected.
    """

    prefix: tuple[int, ...]
    extendable: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(self.prefix))
        _check_strictly_increasing(self.prefix, "digit sequence")
        if self.extendable and not self.prefix:
            raise NotMonotone("an extendable digit sequence needs at least one entry")

    @property
    def terminated(self) -> bool:
        return not self.extendable

    def __len__(self) -> int:
        return len(self.prefix)

    def entry(self, k: int) -> int:
        """1-indexed digit access; raises InsufficientPrefix past the prefix."""
        if k < 1:
            raise IndexError(f"digit positions are 1-indexed, got {k}")
        if k > len(self.prefix):
            if self.extendable:
                raise InsufficientPrefix(
                    f"digit #{k} requested but only {len(self.prefix)} entries are available"
                )
            raise InsufficientPrefix(f"terminated sequence has no digit #{k}")
        return self.prefix[k - 1]

    def require(self, n: int) -> None:
        """Ensure at least ``n`` entries are available."""
        if n > len(self.prefix):
            raise InsufficientPrefix(
                f"operation reads {n} digits but only {len(self.prefix)} are available"
            )

    def take(self, n: int) -> tuple[int, ...]:
        self.require(n)
        return self.prefix[:n]

    def __str__(self) -> str:
        return format_digit_seq(self)


class SequenceClass(Enum):
    """Membership class of a digit sequence."""

    SIGMA_0 = "sigma0"
    SIGMA_N = "sigmaN"
    SIGMA_INFINITY_PREFIX = "sigmaInfinityPrefix"


@dataclass(frozen=True)
class CanonicityReport:
    """Classification result: class membership plus the canonical-tail flag.

    ``canonical`` is False exactly for finite sequences of length >= 2 whose
    last entry is the previous entry plus one; those are valid series but are
    never produced by the greedy digit algorithm.
    """

    kind: SequenceClass
    length: int | None
    canonical: bool


def classify(seq: Union[DigitSeq, Iterable[float]]) -> CanonicityReport:
    """Classify a sequence of extended positive integers.

    Accepts a :class:`DigitSeq` or an iterable of positive integers where
    ``math.inf`` marks the infinite tail.  A raw list without an infinity
    marker is treated as a prefix of an infinite sequence; an empty raw list
    is a vacuous such prefix.
    """
    if isinstance(seq, DigitSeq):
        entries: list[float] = list(seq.prefix)
        if seq.terminated:
            entries.append(INF)
    else:
        entries = list(seq)

    finite: list[int] = []
    saw_inf = False
    for k, entry in enumerate(entries, start=1):
        if entry == INF:
            saw_inf = True
            continue
        if saw_inf:
            raise MalformedTail(f"finite entry {entry!r} at position {k} follows an infinity marker")
        if not isinstance(entry, int) or isinstance(entry, bool):
            raise NotMonotone(f"entry #{k} must be a positive integer or inf, got {entry!r}")
        finite.append(entry)
    _check_strictly_increasing(finite, "sequence")

    n = len(finite)
    if saw_inf:
        kind = SequenceClass.SIGMA_0 if n == 0 else SequenceClass.SIGMA_N
    else:
        kind = SequenceClass.SIGMA_INFINITY_PREFIX
    canonical = True
    if kind is SequenceClass.SIGMA_N and n >= 2 and finite[-1] == finite[-2] + 1:
        canonical = False
    return CanonicityReport(kind, n if kind is SequenceClass.SIGMA_N else None, canonical)


def replace_prefix(x: DigitSeq, tau: Sequence[int]) -> DigitSeq:
    """Replace the first ``len(tau)`` digits of ``x`` by ``tau``.

    The replacement must be strictly increasing and must splice cleanly:
    the last entry of ``tau`` has to stay below the first kept digit of
    ``x``.  ``x`` must extend past the replaced block (terminated sequences
    need more than ``len(tau)`` entries).
    """
    tau = tuple(tau)
    try:
        _check_strictly_increasing(tau, "replacement")
    except NotMonotone as exc:
        raise IllFormedReplacement(str(exc)) from exc

    n = len(tau)
    if len(x.prefix) <= n and x.terminated:
        raise InsufficientPrefix(
            f"replacement of length {n} needs a sequence reaching past position {n}"
        )
    x.require(n)
    rest = x.prefix[n:]
    if tau and rest and tau[-1] >= rest[0]:
        raise IllFormedReplacement(
            f"replacement ends at {tau[-1]} but the kept tail starts at {rest[0]}"
        )
    return DigitSeq(tau + rest, extendable=x.extendable)


@dataclass(frozen=True)
class ZcPrefix:
    """Prefix of an infinite sequence whose digits stay within ``c`` of the index.

    Semantically every entry satisfies ``sigma_n <= n + c`` for ``n >=
    start_index`` (and then automatically for all earlier positions).  The
    bound itself is re-checked by :func:`jump_positions`, which is the
    designated detector for malformed instances.
    """

    prefix: DigitSeq
    c: Fraction
    start_index: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", Fraction(self.c))
        if self.c < 0:
            raise OutOfDomain(f"digit-excess budget must be >= 0, got {self.c}")
        if self.start_index < 1:
            raise OutOfDomain(f"start index must be >= 1, got {self.start_index}")


def enumerate_zc(c: Fraction | int, start_index: int, depth: int) -> list[ZcPrefix]:
    """List every length-``depth`` prefix with all digits bounded by index + c.

    The bound ``sigma_n <= n + c`` is imposed for ``n >= start_index``; for
    earlier positions it follows automatically from strict increase, so the
    search applies it everywhere (which also keeps the tree finite).  Any
    emitted prefix extends to a full bounded sequence, e.g. by always taking
    the next integer.  Output is lexicographically sorted and duplicate-free
    by construction.
    """
    c = Fraction(c)
    if c < 0:
        raise OutOfDomain(f"digit-excess budget must be >= 0, got {c}")
    if start_index < 1:
        raise OutOfDomain(f"start index must be >= 1, got {start_index}")
    if depth < start_index:
        raise OutOfDomain(f"depth {depth} must be >= start index {start_index}")

    slack = math.floor(c)
    results: list[ZcPrefix] = []
    stack: list[int] = []

    def extend(position: int) -> None:
        if position > depth:
            results.append(
                ZcPrefix(DigitSeq(tuple(stack), extendable=True), c, start_index)
            )
            return
        lowest = stack[-1] + 1 if stack else 1
        for digit in range(lowest, position + slack + 1):
            stack.append(digit)
            extend(position + 1)
            stack.pop()

    extend(1)
    return results


def jump_positions(p: ZcPrefix) -> list[int]:
    """Positions where the digit excess ``sigma_n - n`` steps up.

    A step of size ``s`` contributes ``s`` copies of its position, so the
    returned tuple determines the whole excess profile (and with it the
    prefix).  Position 1 appears when the excess starts above zero.  The
    excess must be non-decreasing and bounded by ``floor(c)``; anything else
    means the input was built outside :func:`enumerate_zc` and triggers
    :class:`~pierceleap.errors.ThetaViolation`.
    """
    cap = math.floor(p.c)
    jumps: list[int] = []
    previous = 0
    for position, digit in enumerate(p.prefix.prefix, start=1):
        excess = digit - position
        if excess < previous:
            raise ThetaViolation(
                f"digit excess decreases at position {position}: {previous} -> {excess}"
            )
        if excess > cap:
            raise ThetaViolation(
                f"digit excess {excess} at position {position} exceeds the cap {cap}"
            )
        jumps.extend([position] * (excess - previous))
        previous = excess
    return jumps


def format_digit_seq(seq: DigitSeq) -> str:
    """Serialize as comma-separated digits, ``,...`` tail for extendable, ``0`` for empty."""
    if not seq.prefix:
        return "0"
    body = ",".join(str(d) for d in seq.prefix)
    return body + ",..." if seq.extendable else body


def parse_digit_seq(text: str) -> DigitSeq:
    """Inverse of :func:`format_digit_seq`; ``"0"`` denotes the empty expansion."""
    text = text.strip()
    if text == "0":
        return DigitSeq((), extendable=False)
    extendable = False
    if text.endswith(",..."):
        extendable = True
        text = text[: -len(",...")]
    elif text.endswith("..."):
        extendable = True
        text = text[: -len("...")].rstrip(",")
    try:
        entries = tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise NotMonotone(f"cannot parse digit sequence from {text!r}") from exc
    return DigitSeq(entries, extendable=extendable)
