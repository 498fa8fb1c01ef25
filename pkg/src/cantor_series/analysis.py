"""Decision procedures on expansions: finiteness, periodicity, unit fractions,
constant shifts and the block-grouping rationality test.

Anything that quantifies over all k of an infinite base sequence takes an
explicit horizon; reports say whether a result is certified for every k or
only checked up to the horizon.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .expansion import DigitStream, as_expansion_input, prefix_digits, render_digits, shift_n
from .representation import EventuallyPeriodic, eval_periodic
from .sequences import (
    Affine,
    BaseSequenceSpec,
    Constant,
    ExplicitPrefix,
    Factorial,
    Periodic,
    period_length,
    q_at,
    render,
)

__all__ = [
    "NonPeriodicSpecError",
    "MalformedBreakpointsError",
    "StepBudgetExceeded",
    "PeriodReport",
    "UnitFractionReport",
    "ConstantShiftReport",
    "GroupingReport",
    "finiteness_horizon",
    "detect_period",
    "unit_fraction_digits",
    "constant_shift_check",
    "grouping_ratios",
]


class NonPeriodicSpecError(ValueError):
    pass


class MalformedBreakpointsError(ValueError):
    pass


class StepBudgetExceeded(RuntimeError):
    pass


def finiteness_horizon(r: int, spec: BaseSequenceSpec, bound: int) -> Optional[int]:
    """Smallest k0 <= bound with r | q_1...q_k0, or None.

    When k0 exists every reduced p/r terminates by digit k0. For r = 1 the
    answer is 1 by convention.
    """
    if r < 1 or bound < 1:
        raise ValueError("r and bound must be positive")
    m = r
    for k in range(1, bound + 1):
        m //= gcd(m, q_at(spec, k))
        if m == 1:
            return k
    return None


@dataclass(frozen=True)
class PeriodReport:
    """Eventually periodic digits of x over a periodic base.

    preperiod_len / period_len are minimal. preperiod_digits is padded to a
    multiple of the base period and period_digits rotated to match, so the
    pair is directly usable as an EventuallyPeriodic representation.
    """

    x: Fraction
    spec: BaseSequenceSpec
    preperiod_len: int
    period_len: int
    preperiod_digits: tuple[int, ...]
    period_digits: tuple[int, ...]
    steps: int

    def cycle_digits(self) -> tuple[int, ...]:
        """Period digits repeated to a whole number of base periods."""
        return self.representation().cycle()

    def representation(self) -> EventuallyPeriodic:
        return EventuallyPeriodic(self.preperiod_digits, self.period_digits, self.spec)

    def value(self) -> Fraction:
        return eval_periodic(self.representation())

    def lines(self) -> list[str]:
        return [
            f"preperiod={render_digits(self.preperiod_digits)} period=({render_digits(self.period_digits)})",
        ]


def detect_period(x, spec: BaseSequenceSpec, max_steps: int | None = None) -> PeriodReport:
    """Find preperiod and period of x's digits by cycle detection on (rho_n, n mod L).

    There are at most r*L distinct states, so this stops within r*L + 1 steps.
    """
    x = as_expansion_input(x)
    base_period = period_length(spec)
    if base_period is None:
        raise NonPeriodicSpecError(f"period detection needs a constant or periodic spec, got {render(spec)}")

    stream = DigitStream(x, spec)
    seen: dict[tuple[int, int], int] = {}
    digits: list[int] = []
    state = (stream.state.rho, 0)
    while state not in seen:
        if max_steps is not None and len(digits) >= max_steps:
            raise StepBudgetExceeded(f"no cycle within {max_steps} steps")
        seen[state] = len(digits)
        digits.append(next(stream))
        state = (stream.state.rho, len(digits) % base_period)
    steps = len(digits)
    start = seen[state]
    cycle = digits[start:]

    # the minimal digit period divides the state-cycle length
    size = len(cycle)
    period = next(
        d for d in range(1, size + 1)
        if size % d == 0 and all(cycle[t] == cycle[t + d] for t in range(size - d))
    )
    while start > 0 and digits[start - 1] == digits[start - 1 + period]:
        start -= 1

    def digit_at(t: int) -> int:
        # 0-based position t in the infinite digit sequence
        return digits[t] if t < start else digits[start + (t - start) % period]

    aligned = -(-start // base_period) * base_period
    return PeriodReport(
        x=x,
        spec=spec,
        preperiod_len=start,
        period_len=period,
        preperiod_digits=tuple(digit_at(t) for t in range(aligned)),
        period_digits=tuple(digit_at(t) for t in range(aligned, aligned + period)),
        steps=steps,
    )


@dataclass(frozen=True)
class UnitFractionReport:
    """Digits (q_k - 1)/w of 1/w up to the horizon, or the first k where w does not divide q_k - 1.

    ``certified`` means the divisibility was decided for every k, not just k <= horizon.
    """

    w: int
    digits: Optional[tuple[int, ...]]
    failed_at: Optional[int]
    certified: bool

    @property
    def present(self) -> bool:
        return self.digits is not None

    def lines(self) -> list[str]:
        if self.digits is None:
            return [f"absent k={self.failed_at}"]
        return [f"digits={render_digits(self.digits)}", f"certified={'true' if self.certified else 'false'}"]


def _divides_all(w: int, spec: BaseSequenceSpec) -> bool:
    """Whether w | q_k - 1 for every k >= 1."""
    if isinstance(spec, Constant):
        return (spec.base - 1) % w == 0
    if isinstance(spec, Periodic):
        return all((b - 1) % w == 0 for b in spec.bases)
    if isinstance(spec, Affine):
        # q_k - 1 = slope*k + (offset - 1)
        return spec.slope % w == 0 and (spec.slope + spec.offset - 1) % w == 0
    if isinstance(spec, Factorial):
        # q_k - 1 = k
        return w == 1
    if isinstance(spec, ExplicitPrefix):
        return all((b - 1) % w == 0 for b in spec.prefix) and _divides_all(w, spec.then)
    raise TypeError(f"not a base sequence spec: {spec!r}")


def unit_fraction_digits(w: int, spec: BaseSequenceSpec, horizon: int) -> UnitFractionReport:
    if w < 1 or horizon < 1:
        raise ValueError("w and horizon must be positive")
    digits = []
    for k in range(1, horizon + 1):
        quotient, remainder = divmod(q_at(spec, k) - 1, w)
        if remainder:
            return UnitFractionReport(w, None, k, True)
        digits.append(quotient)

    if w == 1:
        # 1 = [q_1 - 1][q_2 - 1]...: the prefix falls short of 1 by exactly 1/Q_horizon
        total, product = Fraction(0), 1
        for k, d in enumerate(digits, 1):
            product *= q_at(spec, k)
            total += Fraction(d, product)
        if total + Fraction(1, product) != 1:
            raise AssertionError("maximal-digit prefix does not sum to 1 - 1/Q_n")
    elif digits != prefix_digits(Fraction(1, w), spec, horizon):
        raise AssertionError(f"(q_k - 1)/{w} disagrees with the expansion of 1/{w}")
    return UnitFractionReport(w, tuple(digits), None, _divides_all(w, spec))


@dataclass(frozen=True)
class ConstantShiftReport:
    """Result of testing eps_n == eps0 * (q_n - 1)/(q0 - 1) for n0 < n <= horizon.

    ``position`` is the first n > n0 attaining q0. ``tie_conflict`` flags a
    later position with the same base but a different digit.
    ``shift_constant`` is the independent check that sigma^n(x) does not
    change for n0 <= n <= horizon.
    """

    holds: bool
    q0: int
    eps0: int
    position: int
    failed_at: Optional[int]
    tie_conflict: bool
    shift_constant: bool
    shift_value: Optional[Fraction]

    def __bool__(self) -> bool:
        return self.holds

    def lines(self) -> list[str]:
        out = [
            f"holds={'true' if self.holds else 'false'}",
            f"q0={self.q0} eps0={self.eps0} position={self.position}",
        ]
        if self.failed_at is not None:
            out.append(f"failed_at={self.failed_at}")
        if self.tie_conflict:
            out.append("tie_conflict=true")
        shift = f"shift_constant={'true' if self.shift_constant else 'false'}"
        if self.shift_value is not None:
            shift += f" value={self.shift_value.numerator}/{self.shift_value.denominator}"
        out.append(shift)
        return out


def constant_shift_check(x, spec: BaseSequenceSpec, n0: int, horizon: int) -> ConstantShiftReport:
    x = as_expansion_input(x)
    if n0 < 0 or horizon <= n0:
        raise ValueError("need 0 <= n0 < horizon")

    stream = DigitStream(x, spec)
    shifts = [x]
    digits = []
    for _ in range(horizon):
        digits.append(next(stream))
        shifts.append(Fraction(stream.state.rho, stream.r))

    window = range(n0 + 1, horizon + 1)
    q0 = min(q_at(spec, n) for n in window)
    position = next(n for n in window if q_at(spec, n) == q0)
    eps0 = digits[position - 1]

    failed_at = None
    tie_conflict = False
    for n in window:
        q = q_at(spec, n)
        if q == q0 and digits[n - 1] != eps0:
            tie_conflict = True
        target, remainder = divmod(eps0 * (q - 1), q0 - 1)
        if failed_at is None and (remainder or target != digits[n - 1]):
            failed_at = n

    tail = shifts[n0:]
    shift_constant = all(s == tail[0] for s in tail)
    return ConstantShiftReport(
        holds=failed_at is None,
        q0=q0,
        eps0=eps0,
        position=position,
        failed_at=failed_at,
        tie_conflict=tie_conflict,
        shift_constant=shift_constant,
        shift_value=tail[0] if shift_constant else None,
    )


@dataclass(frozen=True)
class GroupingReport:
    """Block values lambda_k and mu_k = (block product) - 1 for blocks (n_k, n_{k+1}].

    When the ratios are all equal, ``common_ratio`` is that value and
    ``shift_agrees`` records whether it equals sigma^{n_1}(x).
    ``mu_min`` and ``lam`` are min mu_k and common_ratio * mu_min.
    """

    breakpoints: tuple[int, ...]
    lambdas: tuple[int, ...]
    mus: tuple[int, ...]
    ratios: tuple[Fraction, ...]
    constant: bool
    common_ratio: Optional[Fraction]
    shift_agrees: Optional[bool]
    mu_min: int
    lam: Optional[Fraction]

    def lines(self) -> list[str]:
        out = []
        for a, b, lam, mu, ratio in zip(self.breakpoints, self.breakpoints[1:], self.lambdas, self.mus, self.ratios):
            out.append(f"block=({a},{b}] lambda={lam} mu={mu} ratio={ratio.numerator}/{ratio.denominator}")
        if self.constant:
            c = self.common_ratio
            agrees = "true" if self.shift_agrees else "false"
            out.append(f"constant=true common_ratio={c.numerator}/{c.denominator} shift_agrees={agrees}")
        else:
            out.append("constant=false")
        return out


def grouping_ratios(x, spec: BaseSequenceSpec, breakpoints, horizon: int) -> GroupingReport:
    x = as_expansion_input(x)
    breakpoints = tuple(breakpoints)
    if len(breakpoints) < 3:
        raise MalformedBreakpointsError("need at least three breakpoints (two blocks)")
    if breakpoints[0] < 0:
        raise MalformedBreakpointsError(f"breakpoint {breakpoints[0]} is negative")
    for a, b in zip(breakpoints, breakpoints[1:]):
        if b <= a:
            raise MalformedBreakpointsError(f"breakpoints not strictly increasing at {a},{b}")
    if breakpoints[-1] > horizon:
        raise MalformedBreakpointsError(f"breakpoint {breakpoints[-1]} beyond horizon {horizon}")

    digits = prefix_digits(x, spec, breakpoints[-1])
    lambdas, mus, ratios = [], [], []
    for a, b in zip(breakpoints, breakpoints[1:]):
        lam, product = 0, 1
        for k in range(a + 1, b + 1):
            q = q_at(spec, k)
            lam = lam * q + digits[k - 1]
            product *= q
        lambdas.append(lam)
        mus.append(product - 1)
        ratios.append(Fraction(lam, product - 1))

    constant = all(r == ratios[0] for r in ratios)
    common = ratios[0] if constant else None
    mu_min = min(mus)
    return GroupingReport(
        breakpoints=breakpoints,
        lambdas=tuple(lambdas),
        mus=tuple(mus),
        ratios=tuple(ratios),
        constant=constant,
        common_ratio=common,
        shift_agrees=(common == shift_n(x, spec, breakpoints[0])) if constant else None,
        mu_min=mu_min,
        lam=common * mu_min if constant else None,
    )
