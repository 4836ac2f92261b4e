import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from scgd.geometry import Point, is_simple

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def P(x, y) -> Point:
    return Point(Fraction(x), Fraction(y))


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=7)
exact_points = st.builds(Point, fractions, fractions)


@st.composite
def simple_sets(draw, size=4):
    pts = draw(st.lists(exact_points, min_size=size, max_size=size, unique=True))
    if not is_simple(pts):
        # nudge the last point off every line through two others
        from hypothesis import assume

        assume(False)
    return tuple(pts)


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
