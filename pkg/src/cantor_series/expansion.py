"""Digit extraction for rationals p/r in a Cantor series base Q.

The streaming path keeps only the residue rho_n = Delta_n - r*delta_n, which
stays in [0, r):

    delta_n = (q_n * rho_{n-1}) // r
    rho_n   = (q_n * rho_{n-1}) %  r,        rho_0 = p

``digits_direct`` recomputes Delta_n = p*Q_n - r*varsigma_n from the full
big-integer sums and is kept as an independent check of the stream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Iterator

from .sequences import BaseSequenceSpec, q_at

__all__ = [
    "InvalidRationalError",
    "ExtractionState",
    "ExtractionTrace",
    "DigitStream",
    "as_expansion_input",
    "parse_rational",
    "format_rational",
    "digit_stream",
    "prefix_digits",
    "direct_traces",
    "digits_direct",
    "shift_n",
    "verify_decomposition",
    "render_digits",
    "parse_digits",
]


class InvalidRationalError(ValueError):
    pass


_RATIONAL = re.compile(r"(-?[0-9]+)/(-?[0-9]+)")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/r"`` (or a bare integer) into a reduced Fraction."""
    text = text.strip()
    m = _RATIONAL.fullmatch(text)
    if m:
        p, r = int(m.group(1)), int(m.group(2))
    elif re.fullmatch(r"-?[0-9]+", text):
        p, r = int(text), 1
    else:
        raise InvalidRationalError(f"not a rational of the form p/r: {text!r}")
    if r == 0:
        raise InvalidRationalError(f"zero denominator in {text!r}")
    return Fraction(p, r)


def format_rational(x: Fraction) -> str:
    """Always ``p/r``, including ``0/1``."""
    return f"{x.numerator}/{x.denominator}"


def as_expansion_input(x) -> Fraction:
    """Coerce *x* to a Fraction in [0, 1), rejecting anything else."""
    if isinstance(x, str):
        x = parse_rational(x)
    elif isinstance(x, tuple):
        p, r = x
        if r == 0:
            raise InvalidRationalError("zero denominator")
        x = Fraction(p, r)
    elif isinstance(x, int):
        x = Fraction(x)
    elif not isinstance(x, Fraction):
        raise InvalidRationalError(f"expected an exact rational, got {type(x).__name__}")
    if not 0 <= x < 1:
        raise InvalidRationalError(f"expansion input must satisfy 0 <= p/r < 1, got {x}")
    return x


@dataclass(frozen=True)
class ExtractionState:
    n: int
    rho: int


@dataclass(frozen=True)
class ExtractionTrace:
    n: int
    delta_big: int
    varsigma: int
    digit: int
    rho: int


class DigitStream:
    """Unbounded iterator over delta_1, delta_2, ... of p/r in base Q.

    Owns its ExtractionState; not meant to be shared between consumers.
    """

    def __init__(self, x, spec: BaseSequenceSpec):
        x = as_expansion_input(x)
        self.x = x
        self.spec = spec
        self.r = x.denominator
        self._n = 0
        self._rho = x.numerator

    @property
    def state(self) -> ExtractionState:
        return ExtractionState(self._n, self._rho)

    @property
    def terminated(self) -> bool:
        """True once rho has hit 0: every later digit is 0."""
        return self._rho == 0

    def __iter__(self) -> Iterator[int]:
        return self

    def __next__(self) -> int:
        n = self._n + 1
        q = q_at(self.spec, n)
        digit, self._rho = divmod(q * self._rho, self.r)
        self._n = n
        if not 0 <= digit < q:
            raise AssertionError(f"digit {digit} out of range for q_{n} = {q}")
        return digit


def digit_stream(x, spec: BaseSequenceSpec) -> DigitStream:
    return DigitStream(x, spec)


def prefix_digits(x, spec: BaseSequenceSpec, n: int) -> list[int]:
    """The first n digits of x."""
    return list(islice(DigitStream(x, spec), n))


def direct_traces(x, spec: BaseSequenceSpec, n: int) -> Iterator[ExtractionTrace]:
    """Traces for steps 1..n computed from Delta_k = p*Q_k - r*varsigma_k.

    varsigma_k is summed term by term as sum_{j<k} delta_j * q_{j+1}...q_k,
    without the Delta recurrence.
    """
    x = as_expansion_input(x)
    p, r = x.numerator, x.denominator
    products = [1]
    digits: list[int] = []
    for k in range(1, n + 1):
        products.append(products[-1] * q_at(spec, k))
        big_q = products[k]
        varsigma = sum(d * (big_q // products[j]) for j, d in enumerate(digits, 1))
        delta_big = p * big_q - r * varsigma
        digit, rho = divmod(delta_big, r)
        digits.append(digit)
        yield ExtractionTrace(k, delta_big, varsigma, digit, rho)


def digits_direct(x, spec: BaseSequenceSpec, n: int) -> ExtractionTrace:
    """Full big-integer trace of step n (n >= 1)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    for trace in direct_traces(x, spec, n):
        pass
    return trace


def shift_n(x, spec: BaseSequenceSpec, n: int) -> Fraction:
    """sigma^n(x) = rho_n / r; sigma^0(x) = x."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    stream = DigitStream(x, spec)
    for _ in range(n):
        if stream.terminated:
            break
        next(stream)
    return Fraction(stream.state.rho, stream.r)


def verify_decomposition(x, spec: BaseSequenceSpec, n: int) -> bool:
    """Check x == sum_{i<=n} delta_i/Q_i + sigma^n(x)/Q_n exactly."""
    x = as_expansion_input(x)
    total = Fraction(0)
    big_q = 1
    for i, d in enumerate(prefix_digits(x, spec, n), 1):
        big_q *= q_at(spec, i)
        total += Fraction(d, big_q)
    return x == total + shift_n(x, spec, n) / big_q


def render_digits(digits) -> str:
    """0-9 as single characters, larger digits bracketed: ``035229[11]4``."""
    return "".join(str(d) if d < 10 else f"[{d}]" for d in digits)


_DIGIT_TOKEN = re.compile(r"\[([0-9]+)\]|([0-9])")


def parse_digits(text: str) -> list[int]:
    """Inverse of render_digits."""
    out = []
    pos = 0
    while pos < len(text):
        m = _DIGIT_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad digit rendering {text!r} at position {pos}")
        out.append(int(m.group(1) if m.group(1) is not None else m.group(2)))
        pos = m.end()
    return out
