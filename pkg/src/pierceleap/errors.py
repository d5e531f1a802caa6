"""Exception hierarchy shared by all pierceleap modules.

Domain errors subclass :class:`PierceLeapError`; most also subclass the
matching builtin (ValueError/ArithmeticError) so callers that do not know
about this package still get sensible behavior.
"""


class PierceLeapError(Exception):
    """Base class for all domain errors raised by this package."""


class NotMonotone(PierceLeapError, ValueError):
    """Digit entries are not strictly increasing."""


class MalformedTail(PierceLeapError, ValueError):
    """A finite entry appears after an infinity marker."""


class IllFormedReplacement(PierceLeapError, ValueError):
    """A prefix replacement would break strict increase at the seam."""


class ThetaViolation(PierceLeapError):
    """Digit-excess sequence of a bounded-digit prefix is malformed."""


class OutOfDomain(PierceLeapError, ValueError):
    """Argument outside the mathematical domain of the operation."""


class InsufficientPrefix(PierceLeapError):
    """An extendable digit sequence does not carry enough entries."""


class NonTermination(PierceLeapError, ArithmeticError):
    """Defensive guard: digit extraction exceeded the iteration cap."""


class EmptyGenerator(PierceLeapError, ValueError):
    """A fundamental interval needs a non-empty generator sequence."""


class BadRange(PierceLeapError, ValueError):
    """An enumeration range is empty or inverted."""


class NotInImage(PierceLeapError, ValueError):
    """Point lies outside the image of the affine digit-prepend map."""


class DegenerateInput(PierceLeapError, ValueError):
    """An interval argument is empty or degenerate."""


class PrecisionExhausted(PierceLeapError, ArithmeticError):
    """A certified enclosure stayed ambiguous at the maximum precision."""
