"""Command-line front end: every core operation as a subcommand.

Output is deterministic for identical arguments and seed.  Exit codes:
0 success, 1 domain error (a JSON error object goes to stderr), 2 usage
error.  ``--output`` selects plain text, CSV, or JSON; CSV schemas are
fixed per subcommand so emitted tables can be parsed back strictly.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import codec, digits, exceptional, intervals, leapyear
from .digits import DigitSeq, parse_digit_seq, format_digit_seq
from .enclosure import (
    Enclosure,
    decimal_str,
    format_rational,
    parse_rational,
    working_bits,
)
from .errors import PierceLeapError


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except PierceLeapError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _digit_seq(text: str) -> DigitSeq:
    try:
        return parse_digit_seq(text)
    except PierceLeapError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _rule(text: str) -> leapyear.IntercalationRule:
    try:
        return leapyear.parse_rule(text)
    except PierceLeapError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _alpha(text: str) -> exceptional.GrowthSpec:
    if text.strip().lower() in {"inf", "infinity", "oo"}:
        return exceptional.GrowthSpec(digits.INF)
    return exceptional.GrowthSpec(_rational(text))


def _enclosure_fields(enc: Enclosure) -> dict:
    return {
        "lo": format_rational(enc.lo),
        "hi": format_rational(enc.hi),
        "lo_decimal": decimal_str(enc.lo),
        "hi_decimal": decimal_str(enc.hi),
    }


class _Emitter:
    """Collects rows and renders them once in the selected format."""

    def __init__(self, output: str, columns: list[str]):
        self.output = output
        self.columns = columns
        self.rows: list[dict] = []

    def add(self, **row) -> None:
        self.rows.append(row)

    def render(self) -> str:
        if self.output == "json":
            return json.dumps(self.rows, indent=2)
        if self.output == "csv":
            buffer = io.StringIO()
            writer = csv.DictWriter(buffer, fieldnames=self.columns, lineterminator="\n")
            writer.writeheader()
            for row in self.rows:
                writer.writerow({key: row.get(key, "") for key in self.columns})
            return buffer.getvalue().rstrip("\n")
        lines = []
        for row in self.rows:
            lines.append(" ".join(str(row.get(key, "")) for key in self.columns))
        return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    # The common flags are accepted both before and after the subcommand;
    # the per-subcommand copies use SUPPRESS so they only override when given.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--output", choices=("plain", "csv", "json"), default=argparse.SUPPRESS,
        help="output format (default: plain)",
    )
    common.add_argument(
        "--precision", type=int, default=argparse.SUPPRESS, metavar="BITS",
        help="working precision for certified enclosures (default 128; env PIERCE_PRECISION)",
    )

    parser = argparse.ArgumentParser(
        prog="pierceleap",
        description="Exact Pierce-expansion and leap-year intercalation toolkit.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name: str, **kwargs) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("expand", help="Pierce digit sequence of a rational in [0,1]")
    p.add_argument("--x", type=_rational, required=True)

    p = add_parser("decode", help="exact value of a terminated digit sequence")
    p.add_argument("--digits", type=_digit_seq, required=True)

    p = add_parser("step", help="one application of the digit map")
    p.add_argument("--x", type=_rational, required=True)

    p = add_parser("interval", help="fundamental interval of a digit block")
    p.add_argument("--digits", type=_digit_seq, required=True)

    p = add_parser("children", help="one-digit subdivision of a fundamental interval")
    p.add_argument("--digits", type=_digit_seq, required=True)
    p.add_argument("--jmax", type=int, required=True)

    p = add_parser("find-interval", help="digit block whose interval fits inside (a, b)")
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--b", type=_rational, required=True)

    p = add_parser("leap", help="is the year a leap year under the rule?")
    p.add_argument("--rule", type=_rule, required=True)
    p.add_argument("--year", type=int, required=True)

    p = add_parser("count", help="leap years through year N")
    p.add_argument("--rule", type=_rule, required=True)
    p.add_argument("--through", type=int, required=True)
    p.add_argument("--method", choices=("direct", "formula", "both"), default="formula")

    p = add_parser("series", help="average leap-day fraction of a rule")
    p.add_argument("--rule", type=_rule, required=True)
    p.add_argument("--n", type=int, default=1, help="partial-sum index for infinite rules")

    p = add_parser("drift", help="drift table N*x - L(rule, N) for N = 1..through")
    p.add_argument("--rule", type=_rule, required=True)
    p.add_argument("--x", type=_rational, required=True)
    p.add_argument("--through", type=int, required=True)
    p.add_argument("--every", type=int, default=1, help="emit every k-th year only")

    p = add_parser("construct", help="digit prefix with prescribed growth rate")
    p.add_argument("--alpha", type=_alpha, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add_parser("diagnose", help="growth diagnostics of a digit prefix")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--digits", type=_digit_seq)
    group.add_argument("--alpha", type=_alpha)
    p.add_argument("--n", type=int, required=True)

    p = add_parser("trajectory", help="drift quotients along the extremal year branches")
    p.add_argument("--alpha", type=_alpha, required=True)
    p.add_argument("--rmax", type=int, required=True)
    p.add_argument("--guard", type=int, default=3)

    p = add_parser("zc", help="prefixes with digits bounded by index + c")
    p.add_argument("--c", type=_rational, required=True)
    p.add_argument("--start-index", type=int, default=1)
    p.add_argument("--depth", type=int, required=True)

    p = add_parser("lln-sample", help="sample the digit growth rate at a fixed index")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    return parser


def parse(argv: list[str]) -> argparse.Namespace:
    """Deterministic argument parse; unknown flags are rejected by argparse."""
    args = build_parser().parse_args(argv)
    # The shared flags use SUPPRESS so a pre-subcommand value survives the
    # subparser pass; fill the real defaults here when neither position set them.
    if not hasattr(args, "output"):
        args.output = "plain"
    if not hasattr(args, "precision"):
        args.precision = None
    return args


def _interval_row(interval: intervals.FundamentalInterval) -> dict:
    return {
        "generator": format_digit_seq(interval.generator),
        "left": format_rational(interval.left),
        "right": format_rational(interval.right),
        "leftOpen": interval.left_open,
        "rightOpen": interval.right_open,
    }


def execute(args: argparse.Namespace) -> int:
    """Dispatch a parsed command; returns the process exit code."""
    bits = working_bits(args.precision) if args.precision is not None else None
    out = sys.stdout

    if args.command == "expand":
        print(format_digit_seq(codec.encode(args.x)), file=out)

    elif args.command == "decode":
        value = codec.decode(args.digits)
        print(f"{format_rational(value)} ({decimal_str(value)})", file=out)

    elif args.command == "step":
        result = codec.step(args.x)
        digit = "inf" if result.digit == digits.INF else str(result.digit)
        print(f"{digit} {format_rational(result.remainder)}", file=out)

    elif args.command == "interval":
        emitter = _Emitter(args.output, ["generator", "left", "right", "leftOpen", "rightOpen"])
        emitter.add(**_interval_row(intervals.fundamental_interval(args.digits)))
        print(emitter.render(), file=out)

    elif args.command == "children":
        emitter = _Emitter(args.output, ["generator", "left", "right", "leftOpen", "rightOpen"])
        for child in intervals.children(args.digits, args.jmax):
            emitter.add(**_interval_row(child))
        print(emitter.render(), file=out)

    elif args.command == "find-interval":
        found = intervals.find_interval_within(args.a, args.b)
        emitter = _Emitter(args.output, ["generator", "left", "right", "leftOpen", "rightOpen"])
        emitter.add(**_interval_row(intervals.fundamental_interval(found)))
        print(emitter.render(), file=out)

    elif args.command == "leap":
        print("true" if leapyear.is_leap(args.rule, args.year) else "false", file=out)

    elif args.command == "count":
        if args.method == "direct":
            print(leapyear.count_leaps_direct(args.rule, args.through), file=out)
        elif args.method == "formula":
            print(leapyear.count_leaps_formula(args.rule, args.through), file=out)
        else:
            direct = leapyear.count_leaps_direct(args.rule, args.through)
            formula = leapyear.count_leaps_formula(args.rule, args.through)
            print(f"{direct} {formula}", file=out)
            if direct != formula:
                print(
                    json.dumps({"error": "CountMismatch",
                                "message": f"direct={direct} formula={formula}"}),
                    file=sys.stderr,
                )
                return 1

    elif args.command == "series":
        enc = leapyear.series_value(args.rule, args.n)
        if enc.width == 0:
            print(f"{format_rational(enc.lo)} ({decimal_str(enc.lo)})", file=out)
        else:
            print(
                f"[{format_rational(enc.lo)}, {format_rational(enc.hi)}] "
                f"({decimal_str(enc.lo)}, {decimal_str(enc.hi)})",
                file=out,
            )

    elif args.command == "drift":
        emitter = _Emitter(args.output, ["N", "L", "drift_lo", "drift_hi"])
        x = Enclosure.point(args.x)
        for year in range(1, args.through + 1):
            if (year - 1) % args.every:
                continue
            record = leapyear.drift(x, args.rule, year)
            emitter.add(
                N=year,
                L=record.leap_count,
                drift_lo=decimal_str(record.drift.lo, 12),
                drift_hi=decimal_str(record.drift.hi, 12),
            )
        print(emitter.render(), file=out)

    elif args.command == "construct":
        seq = exceptional.construct_digits(args.alpha, args.n, bits=bits)
        print(format_digit_seq(seq), file=out)

    elif args.command == "diagnose":
        seq = args.digits
        if seq is None:
            seq = exceptional.construct_digits(args.alpha, args.n, bits=bits)
        emitter = _Emitter(
            args.output,
            ["n", "growth_rate_lo", "growth_rate_hi", "log_product_rate_lo",
             "log_product_rate_hi", "reciprocal_sum"],
        )
        rate = exceptional.growth_rate(seq, args.n, bits=bits)
        product_rate = exceptional.log_product_rate(seq, args.n, bits=bits)
        emitter.add(
            n=args.n,
            growth_rate_lo=decimal_str(rate.lo, 10),
            growth_rate_hi=decimal_str(rate.hi, 10),
            log_product_rate_lo=decimal_str(product_rate.lo, 10),
            log_product_rate_hi=decimal_str(product_rate.hi, 10),
            reciprocal_sum=format_rational(exceptional.reciprocal_partial_sum(seq, args.n)),
        )
        print(emitter.render(), file=out)

    elif args.command == "trajectory":
        rows = exceptional.trajectory(args.alpha, args.rmax, guard=args.guard, bits=bits)
        emitter = _Emitter(
            args.output,
            ["branch", "r", "N", "L", "drift_lo", "drift_hi",
             "quotient_lo", "quotient_hi", "thm2"],
        )
        for row in rows:
            payload = {
                "branch": row.branch,
                "r": row.r,
                "N": row.year,
                "L": row.leap_count,
                "drift_lo": decimal_str(row.drift.lo, 12),
                "drift_hi": decimal_str(row.drift.hi, 12),
                "quotient_lo": decimal_str(row.quotient.lo, 12),
                "quotient_hi": decimal_str(row.quotient.hi, 12),
                "thm2": "" if row.thm2_satisfied is None else str(row.thm2_satisfied).lower(),
            }
            if args.output == "json":
                payload["drift"] = _enclosure_fields(row.drift)
                payload["quotient"] = _enclosure_fields(row.quotient)
            emitter.add(**payload)
        print(emitter.render(), file=out)

    elif args.command == "zc":
        prefixes = digits.enumerate_zc(args.c, args.start_index, args.depth)
        emitter = _Emitter(args.output, ["prefix", "jumps"])
        for prefix in prefixes:
            jumps = digits.jump_positions(prefix)
            emitter.add(
                prefix=",".join(str(d) for d in prefix.prefix.prefix),
                jumps=",".join(str(j) for j in jumps),
            )
        print(emitter.render(), file=out)

    elif args.command == "lln-sample":
        samples = exceptional.lln_sample(args.count, args.bits, args.n, args.seed)
        used = [s.rate for s in samples if s.rate is not None]
        mean = sum(used) / len(used) if used else math.nan
        summary = {"count": len(samples), "used": len(used), "mean_rate": mean}
        if args.output == "json":
            rows = [
                {"index": s.index, "digit": s.digit, "rate": s.rate} for s in samples
            ]
            print(json.dumps({"samples": rows, "summary": summary}, indent=2), file=out)
        else:
            emitter = _Emitter(args.output, ["index", "digit", "rate"])
            for sample in samples:
                emitter.add(
                    index=sample.index,
                    digit="" if sample.digit is None else sample.digit,
                    rate="" if sample.rate is None else repr(sample.rate),
                )
            print(emitter.render(), file=out)
            if args.output == "plain":
                print(f"# used {len(used)}/{len(samples)} mean_rate {mean!r}", file=out)

    return 0


def main(argv: list[str] | None = None) -> int:
    """Entry point: parse, execute, and map domain errors to exit code 1."""
    args = parse(sys.argv[1:] if argv is None else argv)
    try:
        return execute(args)
    except PierceLeapError as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
