from fractions import Fraction
from math import gcd

import pytest

from cantor_series.sequences import parse_spec, q_at

BUILTIN_SPECS = ["const:10", "periodic:2,3", "odd", "even", "factorial"]


def reduced_fractions(max_den, include_zero=False):
    """Every p/r in [0, 1) with r <= max_den, gcd(p, r) = 1."""
    out = [Fraction(0)] if include_zero else []
    for r in range(2, max_den + 1):
        out.extend(Fraction(p, r) for p in range(1, r) if gcd(p, r) == 1)
    return out


def oracle_digits(x, spec, n):
    """delta_k = floor(x*Q_k) - q_k*floor(x*Q_{k-1}), straight from the series definition."""
    digits = []
    big_q = 1
    prev = 0
    for k in range(1, n + 1):
        q = q_at(spec, k)
        big_q *= q
        whole = (x * big_q).__floor__()
        digits.append(whole - q * prev)
        prev = whole
    return digits


@pytest.fixture(params=BUILTIN_SPECS)
def builtin_spec(request):
    return parse_spec(request.param)


_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
