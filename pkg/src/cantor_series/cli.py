"""Command-line front end.

Exit status 0 on success, 1 for usage errors (the message names the flag),
2 for domain errors such as a digit out of range or a non-periodic spec
given to ``period``.
"""

from __future__ import annotations

import argparse
import sys
from itertools import islice

from .analysis import (
    MalformedBreakpointsError,
    NonPeriodicSpecError,
    constant_shift_check,
    detect_period,
    finiteness_horizon,
    grouping_ratios,
    unit_fraction_digits,
)
from .expansion import (
    DigitStream,
    InvalidRationalError,
    as_expansion_input,
    format_rational,
    parse_digits,
    render_digits,
    shift_n,
)
from .representation import (
    EventuallyPeriodic,
    RepresentationError,
    cylinder_interval,
    eval_finite,
    evaluate,
    parse_record,
)
from .sequences import SpecSyntaxError, SpecValidationError, parse_spec

EXIT_USAGE = 1
EXIT_DOMAIN = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _flag(name, convert):
    def parse(text):
        try:
            return convert(text)
        except (ValueError, SpecSyntaxError, SpecValidationError) as e:
            raise UsageError(f"{name}: {e}") from None
    return parse


def _positive(text):
    value = int(text)
    if value < 1:
        raise ValueError(f"expected a positive integer, got {value}")
    return value


def _non_negative(text):
    value = int(text)
    if value < 0:
        raise ValueError(f"expected a non-negative integer, got {value}")
    return value


def _int_list(text):
    return [int(t) for t in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cantor-series", description="Rational numbers in Cantor series bases.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    spec = dict(required=True, type=_flag("--spec", parse_spec), help="base sequence, e.g. odd or periodic:2,3")
    # kept as text so validation errors can name --x
    rational = dict(required=True, help="rational p/r with 0 <= p < r")

    p = sub.add_parser("expand", help="first N digits of x")
    p.add_argument("--spec", **spec)
    p.add_argument("--x", **rational)
    p.add_argument("--count", required=True, type=_flag("--count", _non_negative))
    p.add_argument("--ellipsis", action="store_true", help="append ... when the expansion continues past the cut")

    p = sub.add_parser("shift", help="sigma^n(x)")
    p.add_argument("--spec", **spec)
    p.add_argument("--x", **rational)
    p.add_argument("--n", required=True, type=_flag("--n", _non_negative))

    p = sub.add_parser("reconstruct", help="exact value of a digit string")
    p.add_argument("--spec", type=_flag("--spec", parse_spec))
    p.add_argument("--digits", type=_flag("--digits", parse_digits))
    p.add_argument("--period", type=_flag("--period", parse_digits))
    p.add_argument("--records", help="file of '<spec> | <digits>' lines")

    p = sub.add_parser("cylinder", help="interval of numbers with the given leading digits")
    p.add_argument("--spec", **spec)
    p.add_argument("--base", required=True, type=_flag("--base", parse_digits))

    p = sub.add_parser("period", help="preperiod and period over a periodic base")
    p.add_argument("--spec", **spec)
    p.add_argument("--x", **rational)

    p = sub.add_parser("finite", help="first k0 with r | q_1...q_k0")
    p.add_argument("--r", required=True, type=_flag("--r", _positive))
    p.add_argument("--spec", **spec)
    p.add_argument("--bound", required=True, type=_flag("--bound", _positive))

    p = sub.add_parser("unitfrac", help="digits (q_k - 1)/w of 1/w")
    p.add_argument("--w", required=True, type=_flag("--w", _positive))
    p.add_argument("--spec", **spec)
    p.add_argument("--horizon", required=True, type=_flag("--horizon", _positive))

    p = sub.add_parser("constshift", help="test sigma^n(x) constant for n >= n0")
    p.add_argument("--spec", **spec)
    p.add_argument("--x", **rational)
    p.add_argument("--n0", required=True, type=_flag("--n0", _non_negative))
    p.add_argument("--horizon", required=True, type=_flag("--horizon", _positive))

    p = sub.add_parser("grouping", help="block ratios lambda_k/mu_k")
    p.add_argument("--spec", **spec)
    p.add_argument("--x", **rational)
    p.add_argument("--breaks", required=True, type=_flag("--breaks", _int_list))
    p.add_argument("--horizon", required=True, type=_flag("--horizon", _positive))
    return parser


def _expand(args):
    stream = DigitStream(args.x, args.spec)
    text = render_digits(islice(stream, args.count))
    if args.ellipsis and not stream.terminated:
        text += "..."
    return [text]


def _reconstruct(args):
    if args.records is not None:
        with open(args.records) as fh:
            return [format_rational(evaluate(parse_record(line))) for line in fh if line.strip()]
    if args.spec is None or args.digits is None:
        raise UsageError("reconstruct needs --spec and --digits (or --records)")
    if args.period is not None:
        return [format_rational(evaluate(EventuallyPeriodic(args.digits, args.period, args.spec)))]
    return [format_rational(eval_finite(args.digits, args.spec))]


def _cylinder(args):
    cyl = cylinder_interval(args.base, args.spec)
    return [f"[{format_rational(cyl.left)},{format_rational(cyl.right)}]"]


def _period(args):
    report = detect_period(args.x, args.spec)
    return report.lines() + [f"x={format_rational(report.value())}"]


def _finite(args):
    k0 = finiteness_horizon(args.r, args.spec, args.bound)
    return [f"k0={'none' if k0 is None else k0}"]


COMMANDS = {
    "expand": _expand,
    "shift": lambda a: [format_rational(shift_n(a.x, a.spec, a.n))],
    "reconstruct": _reconstruct,
    "cylinder": _cylinder,
    "period": _period,
    "finite": _finite,
    "unitfrac": lambda a: unit_fraction_digits(a.w, a.spec, a.horizon).lines(),
    "constshift": lambda a: constant_shift_check(a.x, a.spec, a.n0, a.horizon).lines(),
    "grouping": lambda a: grouping_ratios(a.x, a.spec, a.breaks, a.horizon).lines(),
}


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "x", None) is not None:
            try:
                args.x = as_expansion_input(args.x)
            except InvalidRationalError as e:
                raise UsageError(f"--x: {e}") from None
        lines = COMMANDS[args.command](args)
    except UsageError as e:
        print(f"usage error: {e}", file=stderr)
        return EXIT_USAGE
    except (RepresentationError, NonPeriodicSpecError, MalformedBreakpointsError,
            SpecSyntaxError, SpecValidationError, ValueError, OSError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_DOMAIN
    for line in lines:
        print(line, file=stdout)
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
