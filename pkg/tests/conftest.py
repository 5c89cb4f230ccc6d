import random

import pytest
from hypothesis import settings

from thetacorr.local_field import FieldParams

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(params=[3, 5, 7], ids=lambda p: f"p{p}")
def ctx(request):
    return FieldParams(request.param, N=10)


@pytest.fixture
def ctx3():
    return FieldParams(3, N=12)


@pytest.fixture
def rng():
    return random.Random(20240611)


def padic_val(x, p):
    """Independent p-adic valuation of a Fraction (inf for 0)."""
    from fractions import Fraction

    x = Fraction(x)
    if x == 0:
        return float("inf")
    v, n, d = 0, x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
