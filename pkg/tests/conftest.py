from fractions import Fraction

import pytest
from hypothesis import strategies as st

from orbitloop.lie import catalog

ACCEPTANCE_RESULTS: dict = {}

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@pytest.fixture(params=["h3", "h5", "h7", "filiform4"])
def nilpotent_algebra(request):
    return catalog(request.param)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        status, text = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{status}] criterion {key}: {text}")


def F(*xs):
    return tuple(Fraction(x) for x in xs)
