"""Exit criteria, one test per criterion, all exact.

Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per criterion
is printed in the terminal summary. Tests run in file order; criterion 10
checks every digit the earlier criteria generated.
"""

import io
from fractions import Fraction
from itertools import islice
from pathlib import Path

from cantor_series.analysis import detect_period, finiteness_horizon, unit_fraction_digits
from cantor_series.cli import run
from cantor_series.expansion import DigitStream, direct_traces, shift_n, verify_decomposition
from cantor_series.representation import eval_periodic
from cantor_series.sequences import ODD, parse_spec, partial_product, period_length, q_at

from conftest import BUILTIN_SPECS, reduced_fractions

GOLDEN = Path(__file__).parent / "golden"

# (spec, first index, digits) for every expansion produced below
_generated = []


def _digits(x, spec, n):
    digits = list(islice(DigitStream(x, spec), n))
    _generated.append((spec, 1, digits))
    return digits


def test_ac01_golden_digits_quarter_and_three_eighths():
    assert _digits(Fraction(1, 4), ODD, 8) == [0, 3, 5, 2, 2, 9, 11, 4]
    assert _digits(Fraction(3, 8), ODD, 9) == [1, 0, 4, 3, 4, 1, 9, 6, 7]


def test_ac02_golden_digits_halves_and_sixths():
    assert _digits(Fraction(1, 2), ODD, 200) == list(range(1, 201))
    assert _digits(Fraction(1, 6), ODD, 50) == [0] + list(range(2, 51))
    assert _digits(Fraction(5, 6), ODD, 50) == [2] + list(range(2, 51))


def test_ac03_shift_fixed_point():
    for n in range(101):
        assert shift_n(Fraction(1, 2), ODD, n) == Fraction(1, 2)


def test_ac04_oracle_equivalence():
    for spec in map(parse_spec, BUILTIN_SPECS):
        for x in reduced_fractions(25):
            r = x.denominator
            stream = DigitStream(x, spec)
            digits = []
            prev = None
            for trace in direct_traces(x, spec, 30):
                digit = next(stream)
                digits.append(digit)
                assert digit == trace.delta_big // r
                assert stream.state.rho == trace.delta_big % r
                if prev is not None:
                    assert trace.delta_big == q_at(spec, trace.n) * (prev.delta_big - r * prev.digit)
                prev = trace
            _generated.append((spec, 1, digits))


def test_ac05_decomposition_identity():
    for spec in map(parse_spec, BUILTIN_SPECS):
        for x in reduced_fractions(25):
            for n in range(1, 31):
                assert verify_decomposition(x, spec, n)


def test_ac06_factorial_and_even_terminate():
    for spec in map(parse_spec, ["factorial", "even"]):
        for x in reduced_fractions(20):
            k0 = finiteness_horizon(x.denominator, spec, 1000)
            assert k0 is not None
            stream = DigitStream(x, spec)
            digits = list(islice(stream, k0))
            assert stream.terminated
            _generated.append((spec, 1, digits))


def test_ac07_odd_never_divisible_by_four():
    assert finiteness_horizon(4, ODD, 1000) is None
    assert partial_product(ODD, 1000) % 4 != 0


def test_ac08_period_round_trip():
    for spec in map(parse_spec, ["const:10", "periodic:2,3", "periodic:3,4,5"]):
        L = period_length(spec)
        for x in reduced_fractions(30):
            report = detect_period(x, spec)
            assert report.steps <= x.denominator * L + 1
            assert eval_periodic(report.representation()) == x
            _generated.append((spec, 1, list(report.preperiod_digits)))
            _generated.append((spec, len(report.preperiod_digits) + 1, list(report.cycle_digits())))


def test_ac09_unit_fractions():
    report = unit_fraction_digits(2, ODD, 100)
    assert report.digits == tuple(range(1, 101))
    assert list(report.digits) == _digits(Fraction(1, 2), ODD, 100)
    absent = unit_fraction_digits(3, ODD, 100)
    assert absent.digits is None and absent.failed_at == 1


def test_ac10_digit_bounds():
    assert len(_generated) > 1000
    for spec, start, digits in _generated:
        for k, d in enumerate(digits, start):
            assert 0 <= d <= q_at(spec, k) - 1


def test_ac11_cli_golden_files():
    cases = [
        ("expand --spec odd --x 1/4 --count 8", "expand_odd_1_4.txt"),
        ("expand --spec odd --x 3/8 --count 9", "expand_odd_3_8.txt"),
        ("period --spec periodic:2,3 --x 1/5", "period_2_3_1_5.txt"),
    ]
    for argv, golden in cases:
        out = io.StringIO()
        assert run(argv.split(), stdout=out) == 0
        assert out.getvalue().encode() == (GOLDEN / golden).read_bytes()
