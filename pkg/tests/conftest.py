import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from halfplane import ExpPoly, Term

settings.register_profile(
    "default", max_examples=40, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@st.composite
def exppolys(draw, max_terms=3, max_power=3, min_power=0, rate_re=(0.2, 3.0)):
    n = draw(st.integers(1, max_terms))
    terms = []
    for _ in range(n):
        c = complex(draw(st.floats(-2, 2)), draw(st.floats(-2, 2)))
        if abs(c) < 1e-3:
            c = 1.0
        k = draw(st.integers(min_power, max(min_power, max_power)))
        a = complex(draw(st.floats(*rate_re)), draw(st.floats(-2, 2)))
        terms.append(Term(c, k, a))
    f = ExpPoly(tuple(terms))
    return f if f else ExpPoly.exp(1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
