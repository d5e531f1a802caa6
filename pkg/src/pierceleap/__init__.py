"""Exact Pierce-expansion arithmetic and generalized leap-year rules.

The package decomposes into:

- :mod:`pierceleap.digits` — digit-sequence domain types, classification,
  prefix replacement, and bounded-digit enumeration;
- :mod:`pierceleap.codec` — the expansion codec (digit map, encode/decode,
  alternating-series enclosures);
- :mod:`pierceleap.intervals` — fundamental intervals and affine
  digit-prepend maps;
- :mod:`pierceleap.leapyear` — intercalation rules, leap predicates and
  counts, series values, drift;
- :mod:`pierceleap.exceptional` — constructed digit sequences with
  prescribed growth and certified drift-quotient trajectories;
- :mod:`pierceleap.cli` — the command-line front end.
"""

from .codec import StepResult, decode, enclose, encode, step, tail_bound
from .digits import (
    INF,
    CanonicityReport,
    DigitSeq,
    SequenceClass,
    ZcPrefix,
    classify,
    enumerate_zc,
    format_digit_seq,
    jump_positions,
    parse_digit_seq,
    replace_prefix,
)
from .enclosure import Enclosure, exp_enclosure, log_enclosure, sqrt_enclosure
from .exceptional import (
    GrowthSpec,
    TrajectoryRow,
    construct_digits,
    extremal_year_at,
    extremal_years,
    growth_rate,
    lln_sample,
    log_product_rate,
    quotient_enclosure,
    quotient_lower_bound,
    reciprocal_partial_sum,
    trajectory,
)
from .intervals import (
    AffineMap,
    FundamentalInterval,
    affine_apply,
    affine_invert,
    children,
    contains,
    find_interval_within,
    fundamental_interval,
)
from .leapyear import (
    GREGORIAN,
    JULIAN,
    TROPICAL_YEAR_FRACTION,
    DriftRecord,
    IntercalationRule,
    count_leaps_direct,
    count_leaps_formula,
    drift,
    is_leap,
    mul,
    parse_rule,
    series_value,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "CanonicityReport",
    "DigitSeq",
    "DriftRecord",
    "Enclosure",
    "FundamentalInterval",
    "GREGORIAN",
    "GrowthSpec",
    "INF",
    "IntercalationRule",
    "JULIAN",
    "SequenceClass",
    "StepResult",
    "TROPICAL_YEAR_FRACTION",
    "TrajectoryRow",
    "ZcPrefix",
    "affine_apply",
    "affine_invert",
    "children",
    "classify",
    "construct_digits",
    "contains",
    "count_leaps_direct",
    "count_leaps_formula",
    "decode",
    "drift",
    "enclose",
    "encode",
    "enumerate_zc",
    "exp_enclosure",
    "extremal_year_at",
    "extremal_years",
    "find_interval_within",
    "format_digit_seq",
    "fundamental_interval",
    "growth_rate",
    "is_leap",
    "jump_positions",
    "lln_sample",
    "log_enclosure",
    "log_product_rate",
    "mul",
    "parse_digit_seq",
    "parse_rule",
    "quotient_enclosure",
    "quotient_lower_bound",
    "reciprocal_partial_sum",
    "replace_prefix",
    "series_value",
    "sqrt_enclosure",
    "step",
    "tail_bound",
    "trajectory",
]
