"""Base sequences Q = (q_k) for Cantor series, their partial products and the
spec-string parser.

Indices are 1-based throughout: ``q_at(spec, 1)`` is the first base.
Every spec is validated on construction so that ``q_k >= 2`` holds for all k.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from operator import mul
from typing import Union

__all__ = [
    "Constant",
    "Periodic",
    "Affine",
    "Factorial",
    "ExplicitPrefix",
    "BaseSequenceSpec",
    "ODD",
    "EVEN",
    "SpecSyntaxError",
    "SpecValidationError",
    "q_at",
    "partial_product",
    "partial_products",
    "period_length",
    "parse_spec",
    "render",
]


class SpecSyntaxError(ValueError):
    """Malformed spec string; ``position`` is the 0-based offset of the fault."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SpecValidationError(ValueError):
    """A spec that would produce some q_k < 2.

    ``k`` is the first offending index when one exists, otherwise ``param``
    names the offending parameter.
    """

    def __init__(self, message: str, k: int | None = None, param: str | None = None):
        super().__init__(message)
        self.k = k
        self.param = param


@dataclass(frozen=True)
class Constant:
    base: int

    def __post_init__(self):
        if self.base < 2:
            raise SpecValidationError(f"const base {self.base} < 2 (q_1 = {self.base})", k=1, param="base")


@dataclass(frozen=True)
class Periodic:
    bases: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bases", tuple(self.bases))
        if not self.bases:
            raise SpecValidationError("periodic list is empty", param="bases")
        for k, b in enumerate(self.bases, 1):
            if b < 2:
                raise SpecValidationError(f"q_{k} = {b} < 2", k=k)


@dataclass(frozen=True)
class Affine:
    """q_k = slope * k + offset."""

    slope: int
    offset: int

    def __post_init__(self):
        if self.slope < 0:
            raise SpecValidationError(
                f"affine slope {self.slope} < 0 makes q_k eventually < 2", param="slope"
            )
        # non-decreasing in k, so q_1 is the minimum
        if self.slope + self.offset < 2:
            raise SpecValidationError(f"q_1 = {self.slope + self.offset} < 2", k=1)


@dataclass(frozen=True)
class Factorial:
    """q_k = k + 1, so that Q_n = (n + 1)!."""


@dataclass(frozen=True)
class ExplicitPrefix:
    """Hand-chosen leading bases followed by another spec.

    The tail is re-indexed: q_{len(prefix) + j} is the tail's j-th base.
    """

    prefix: tuple[int, ...]
    then: "BaseSequenceSpec"

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        if not self.prefix:
            raise SpecValidationError("prefix list is empty", param="prefix")
        for k, b in enumerate(self.prefix, 1):
            if b < 2:
                raise SpecValidationError(f"q_{k} = {b} < 2", k=k)
        if not isinstance(self.then, _SPEC_TYPES):
            raise SpecValidationError(f"tail is not a spec: {self.then!r}", param="then")


BaseSequenceSpec = Union[Constant, Periodic, Affine, Factorial, ExplicitPrefix]
_SPEC_TYPES = (Constant, Periodic, Affine, Factorial, ExplicitPrefix)

ODD = Affine(2, 1)
EVEN = Affine(2, 0)


def q_at(spec: BaseSequenceSpec, k: int) -> int:
    """Return q_k (k >= 1)."""
    if k < 1:
        raise ValueError(f"index k must be >= 1, got {k}")
    while isinstance(spec, ExplicitPrefix):
        if k <= len(spec.prefix):
            return spec.prefix[k - 1]
        k -= len(spec.prefix)
        spec = spec.then
    if isinstance(spec, Constant):
        return spec.base
    if isinstance(spec, Periodic):
        return spec.bases[(k - 1) % len(spec.bases)]
    if isinstance(spec, Affine):
        return spec.slope * k + spec.offset
    if isinstance(spec, Factorial):
        return k + 1
    raise TypeError(f"not a base sequence spec: {spec!r}")


def partial_product(spec: BaseSequenceSpec, n: int) -> int:
    """Q_n = q_1 q_2 ... q_n, with Q_0 = 1."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return reduce(mul, (q_at(spec, k) for k in range(1, n + 1)), 1)


def partial_products(spec: BaseSequenceSpec, n: int) -> list[int]:
    """[Q_0, Q_1, ..., Q_n]."""
    out = [1]
    for k in range(1, n + 1):
        out.append(out[-1] * q_at(spec, k))
    return out


def period_length(spec: BaseSequenceSpec) -> int | None:
    """Length L of the base period for Constant/Periodic specs, else None."""
    if isinstance(spec, Constant):
        return 1
    if isinstance(spec, Periodic):
        return len(spec.bases)
    return None


def render(spec: BaseSequenceSpec) -> str:
    if isinstance(spec, Constant):
        return f"const:{spec.base}"
    if isinstance(spec, Periodic):
        return "periodic:" + ",".join(map(str, spec.bases))
    if isinstance(spec, Affine):
        return f"affine:{spec.slope},{spec.offset}"
    if isinstance(spec, Factorial):
        return "factorial"
    if isinstance(spec, ExplicitPrefix):
        return "prefix:" + ",".join(map(str, spec.prefix)) + ";" + render(spec.then)
    raise TypeError(f"not a base sequence spec: {spec!r}")


_INT = re.compile(r"-?[0-9]+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def expect(self, literal: str):
        if not self.text.startswith(literal, self.pos):
            raise SpecSyntaxError(f"expected {literal!r}", self.pos)
        self.pos += len(literal)

    def integer(self) -> int:
        m = _INT.match(self.text, self.pos)
        if not m:
            raise SpecSyntaxError("expected integer", self.pos)
        self.pos = m.end()
        return int(m.group())

    def int_list(self) -> list[int]:
        values = [self.integer()]
        while self.text.startswith(",", self.pos):
            self.pos += 1
            values.append(self.integer())
        return values

    def spec(self) -> BaseSequenceSpec:
        t, p = self.text, self.pos
        if t.startswith("const:", p):
            self.pos += 6
            return Constant(self.integer())
        if t.startswith("periodic:", p):
            self.pos += 9
            return Periodic(tuple(self.int_list()))
        if t.startswith("affine:", p):
            self.pos += 7
            slope = self.integer()
            self.expect(",")
            return Affine(slope, self.integer())
        if t.startswith("prefix:", p):
            self.pos += 7
            prefix = tuple(self.int_list())
            for k, b in enumerate(prefix, 1):
                if b < 2:
                    raise SpecValidationError(f"q_{k} = {b} < 2", k=k)
            self.expect(";")
            try:
                tail = self.spec()
            except SpecValidationError as e:
                if e.k is None:
                    raise
                k = e.k + len(prefix)
                raise SpecValidationError(f"q_{k} < 2 (tail {e})", k=k) from e
            return ExplicitPrefix(prefix, tail)
        for word, value in (("odd", ODD), ("even", EVEN), ("factorial", Factorial())):
            if t.startswith(word, p):
                self.pos += len(word)
                return value
        raise SpecSyntaxError("unknown sequence kind", p)


def parse_spec(text: str) -> BaseSequenceSpec:
    """Parse a spec string such as ``odd``, ``periodic:2,3`` or ``prefix:5;factorial``.

    Raises SpecSyntaxError (with position) or SpecValidationError.
    """
    parser = _Parser(text)
    spec = parser.spec()
    if parser.pos != len(text):
        raise SpecSyntaxError("trailing characters", parser.pos)
    return spec
