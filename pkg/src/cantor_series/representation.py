"""Digit representations, exact evaluation back to rationals, and cylinders."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Union

from .expansion import as_expansion_input, parse_digits, render_digits
from .sequences import BaseSequenceSpec, parse_spec, partial_product, period_length, q_at, render

__all__ = [
    "DigitOutOfRangeError",
    "RepresentationError",
    "Finite",
    "EventuallyPeriodic",
    "Truncated",
    "CantorRepr",
    "Cylinder",
    "check_digits",
    "eval_finite",
    "eval_periodic",
    "evaluate",
    "cylinder_interval",
    "truncation_bound",
    "format_record",
    "parse_record",
]


class DigitOutOfRangeError(ValueError):
    def __init__(self, k: int, digit: int, q: int):
        super().__init__(f"digit {digit} at position {k} outside 0..{q - 1}")
        self.k = k
        self.digit = digit
        self.q = q


class RepresentationError(ValueError):
    pass


def check_digits(digits, spec: BaseSequenceSpec, start: int = 1) -> None:
    """Raise DigitOutOfRangeError unless 0 <= d_k <= q_k - 1, positions from *start*."""
    for k, d in enumerate(digits, start):
        q = q_at(spec, k)
        if not 0 <= d < q:
            raise DigitOutOfRangeError(k, d, q)


@dataclass(frozen=True)
class Finite:
    """Terminating digits; trailing zeros are dropped on construction."""

    digits: tuple[int, ...]
    spec: BaseSequenceSpec

    def __post_init__(self):
        digits = list(self.digits)
        check_digits(digits, self.spec)
        while digits and digits[-1] == 0:
            digits.pop()
        object.__setattr__(self, "digits", tuple(digits))


@dataclass(frozen=True)
class Truncated:
    """A prefix of a longer (possibly infinite) expansion."""

    digits: tuple[int, ...]
    spec: BaseSequenceSpec

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(self.digits))
        check_digits(self.digits, self.spec)


@dataclass(frozen=True)
class EventuallyPeriodic:
    """preperiod digits followed by period digits repeated forever.

    Only valid over a periodic base sequence, with the preperiod length a
    multiple of the base period L.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    spec: BaseSequenceSpec

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        base_period = period_length(self.spec)
        if base_period is None:
            raise RepresentationError(f"periodic digits need a periodic base sequence, got {render(self.spec)}")
        if not self.period:
            raise RepresentationError("period digit list is empty")
        if len(self.preperiod) % base_period:
            raise RepresentationError(
                f"preperiod length {len(self.preperiod)} is not a multiple of the base period {base_period}"
            )
        check_digits(self.preperiod, self.spec)
        block = self.cycle()
        start = len(self.preperiod) + 1
        check_digits(block, self.spec, start)
        if all(d == q_at(self.spec, k) - 1 for k, d in enumerate(block, start)):
            raise RepresentationError("period of maximal digits is the non-canonical form of a terminating expansion")

    def cycle(self) -> tuple[int, ...]:
        """The period repeated until its length is a multiple of the base period."""
        length = lcm(len(self.period), period_length(self.spec))
        return self.period * (length // len(self.period))


CantorRepr = Union[Finite, EventuallyPeriodic, Truncated]


def _mixed_radix_value(digits, spec: BaseSequenceSpec, start: int) -> tuple[int, int]:
    """(N, P) with N = sum d_i * q_{i+1}...q_end and P = q_start...q_end."""
    numerator, product = 0, 1
    for k, d in enumerate(digits, start):
        q = q_at(spec, k)
        numerator = numerator * q + d
        product *= q
    return numerator, product


def eval_finite(digits, spec: BaseSequenceSpec) -> Fraction:
    """Exact sum of d_i / (q_1...q_i)."""
    digits = list(digits)
    check_digits(digits, spec)
    numerator, product = _mixed_radix_value(digits, spec, 1)
    return Fraction(numerator, product)


def eval_periodic(rep: EventuallyPeriodic) -> Fraction:
    """Value of preperiod(period) as A + (1/Q_m) * N / (P - 1)."""
    if not isinstance(rep, EventuallyPeriodic):
        raise RepresentationError(f"expected EventuallyPeriodic, got {type(rep).__name__}")
    m = len(rep.preperiod)
    head = eval_finite(rep.preperiod, rep.spec)
    numerator, product = _mixed_radix_value(rep.cycle(), rep.spec, m + 1)
    return head + Fraction(numerator, partial_product(rep.spec, m) * (product - 1))


def evaluate(rep: CantorRepr) -> Fraction:
    if isinstance(rep, EventuallyPeriodic):
        return eval_periodic(rep)
    return eval_finite(rep.digits, rep.spec)


@dataclass(frozen=True)
class Cylinder:
    base: tuple[int, ...]
    spec: BaseSequenceSpec
    left: Fraction
    right: Fraction

    @property
    def rank(self) -> int:
        return len(self.base)

    def __contains__(self, x) -> bool:
        return self.left <= x <= self.right


def cylinder_interval(base, spec: BaseSequenceSpec) -> Cylinder:
    """Closed interval of all numbers whose first digits are *base*."""
    base = tuple(base)
    left = eval_finite(base, spec)
    return Cylinder(base, spec, left, left + Fraction(1, partial_product(spec, len(base))))


def truncation_bound(x, spec: BaseSequenceSpec, n: int) -> Fraction:
    """1/Q_n; bounds x - S_n for the canonical n-digit prefix sum S_n."""
    as_expansion_input(x)
    return Fraction(1, partial_product(spec, n))


_PERIODIC_BODY = re.compile(r"(.*)\((.*)\)")


def format_record(rep: CantorRepr) -> str:
    """``<spec> | <digits>`` or ``<spec> | <preperiod>(<period>)``."""
    if isinstance(rep, EventuallyPeriodic):
        body = f"{render_digits(rep.preperiod)}({render_digits(rep.period)})"
    else:
        body = render_digits(rep.digits)
    return f"{render(rep.spec)} | {body}"


def parse_record(line: str, truncated: bool = False) -> CantorRepr:
    """Parse one digit-record line. Plain digit lists become Finite unless *truncated*."""
    try:
        spec_text, body = line.rstrip("\n").split(" | ")
    except ValueError:
        raise RepresentationError(f"expected '<spec> | <digits>', got {line!r}") from None
    spec = parse_spec(spec_text)
    m = _PERIODIC_BODY.fullmatch(body)
    if m:
        return EventuallyPeriodic(tuple(parse_digits(m.group(1))), tuple(parse_digits(m.group(2))), spec)
    cls = Truncated if truncated else Finite
    return cls(tuple(parse_digits(body)), spec)
