from fractions import Fraction
from itertools import islice

import pytest
from hypothesis import given, strategies as st

from cantor_series.expansion import (
    DigitStream,
    InvalidRationalError,
    as_expansion_input,
    digits_direct,
    direct_traces,
    parse_digits,
    parse_rational,
    prefix_digits,
    render_digits,
    shift_n,
    verify_decomposition,
)
from cantor_series.sequences import ODD, Constant, Factorial, parse_spec, partial_product, q_at

from conftest import BUILTIN_SPECS, oracle_digits, reduced_fractions


@pytest.mark.parametrize("x, spec, expected", [
    (Fraction(1, 4), ODD, [0, 3, 5, 2, 2, 9, 11, 4]),
    (Fraction(3, 8), ODD, [1, 0, 4, 3, 4, 1, 9, 6, 7]),
    (Fraction(1, 2), ODD, list(range(1, 21))),
    (Fraction(0), Factorial(), [0] * 10),
    (Fraction(1, 7), Factorial(), [0, 0, 3, 2, 0, 6, 0, 0, 0, 0]),
    (Fraction(1, 3), Constant(10), [3] * 6),
])
def test_stream_examples(x, spec, expected):
    assert prefix_digits(x, spec, len(expected)) == expected


def test_oracle_agrees_on_hand_example():
    # the 1/7 digits above were worked out by hand; the floor oracle must reproduce them
    assert oracle_digits(Fraction(1, 7), Factorial(), 6) == [0, 0, 3, 2, 0, 6]


def test_stream_state_and_termination():
    stream = DigitStream(Fraction(1, 7), Factorial())
    assert stream.state.n == 0 and stream.state.rho == 1
    list(islice(stream, 5))
    assert not stream.terminated
    next(stream)
    assert stream.terminated and stream.state.n == 6


@pytest.mark.parametrize("bad", [Fraction(1), Fraction(3, 2), Fraction(-1, 3), "5/5", "1/0", 0.5])
def test_invalid_inputs(bad):
    with pytest.raises(InvalidRationalError):
        DigitStream(bad, ODD)


def test_input_coercion():
    assert as_expansion_input("2/4") == Fraction(1, 2)
    assert as_expansion_input((3, 9)) == Fraction(1, 3)
    assert as_expansion_input(0) == 0
    assert parse_rational("0/7") == 0


def test_direct_examples():
    t = digits_direct(Fraction(1, 2), ODD, 1)
    assert (t.delta_big, t.digit, t.rho, t.varsigma) == (3, 1, 1, 0)
    assert digits_direct(Fraction(1, 4), ODD, 7).digit == 11
    for n in (1, 5, 12):
        t = digits_direct(Fraction(0), parse_spec("periodic:2,3"), n)
        assert (t.delta_big, t.digit, t.rho) == (0, 0, 0)


def test_direct_rejects_step_zero():
    with pytest.raises(ValueError):
        digits_direct(Fraction(1, 2), ODD, 0)


def test_shift_examples():
    for n in range(12):
        assert shift_n(Fraction(1, 2), ODD, n) == Fraction(1, 2)
    assert shift_n(Fraction(1, 6), ODD, 1) == Fraction(1, 2)
    assert shift_n(Fraction(3, 8), ODD, 0) == Fraction(3, 8)
    assert shift_n(Fraction(1, 7), Factorial(), 6) == 0
    assert shift_n(Fraction(1, 7), Factorial(), 50) == 0


def test_decomposition_examples():
    assert verify_decomposition(Fraction(3, 8), ODD, 5)
    assert verify_decomposition(Fraction(0), ODD, 1)
    assert verify_decomposition(Fraction(1, 7), Factorial(), 6)
    assert shift_n(Fraction(1, 7), Factorial(), 6) == 0


@pytest.mark.parametrize("spec_text", BUILTIN_SPECS)
def test_stream_matches_oracles(spec_text):
    spec = parse_spec(spec_text)
    for x in reduced_fractions(16, include_zero=True):
        stream = DigitStream(x, spec)
        traces = list(direct_traces(x, spec, 20))
        floor_digits = oracle_digits(x, spec, 20)
        prev = None
        for trace, expected in zip(traces, floor_digits):
            digit = next(stream)
            assert digit == trace.digit == expected
            assert stream.state.rho == trace.rho == trace.delta_big % x.denominator
            assert trace.delta_big == x.numerator * partial_product(spec, trace.n) - x.denominator * trace.varsigma
            if prev is not None:
                assert trace.delta_big == q_at(spec, trace.n) * (prev.delta_big - x.denominator * prev.digit)
            assert shift_n(x, spec, trace.n) == Fraction(trace.rho, x.denominator)
            prev = trace


fractions_in_unit = st.integers(1, 60).flatmap(lambda r: st.integers(0, r - 1).map(lambda p: Fraction(p, r)))
specs = st.sampled_from(BUILTIN_SPECS + ["periodic:3,4,5", "prefix:7,2;odd", "affine:5,-2"]).map(parse_spec)


@given(fractions_in_unit, specs, st.integers(0, 25))
def test_enclosure_and_decomposition(x, spec, n):
    digits = prefix_digits(x, spec, n)
    total, big_q = Fraction(0), 1
    for k, d in enumerate(digits, 1):
        q = q_at(spec, k)
        assert 0 <= d <= q - 1
        big_q *= q
        total += Fraction(d, big_q)
    assert total <= x < total + Fraction(1, big_q)
    if n:
        assert verify_decomposition(x, spec, n)


@given(fractions_in_unit, specs)
def test_rho_zero_iff_zero_tail(x, spec):
    stream = DigitStream(x, spec)
    for _ in range(30):
        next(stream)
        if stream.terminated:
            assert set(islice(DigitStream(x, spec), stream.state.n, stream.state.n + 20)) == {0}
            return
    # not terminated within 30 steps: the tail must not be all zeros from step 30
    assert any(islice(stream, 60))


@pytest.mark.parametrize("digits, text", [
    ([0, 3, 5, 2, 2, 9, 11, 4], "035229[11]4"),
    ([], ""),
    ([10, 0, 123], "[10]0[123]"),
])
def test_render_digits(digits, text):
    assert render_digits(digits) == text
    assert parse_digits(text) == digits


def test_parse_digits_rejects_garbage():
    with pytest.raises(ValueError):
        parse_digits("12[3")
