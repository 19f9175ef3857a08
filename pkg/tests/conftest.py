from fractions import Fraction

import pytest


def div_valuation(x, p):
    """Valuation by plain repeated division; independent of padbin.arith."""
    assert x != 0
    x, e = abs(x), 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def frac_valuation(x, p):
    x = Fraction(x)
    return div_valuation(x.numerator, p) - div_valuation(x.denominator, p)


@pytest.fixture
def dv():
    return div_valuation


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
