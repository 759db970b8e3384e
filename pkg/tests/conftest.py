import pytest
from hypothesis import settings

from fatarc import GF, QQ, PolyRing, line_point, make_fat_point, plane_jet

settings.register_profile("ci", max_examples=40, deadline=None)
settings.load_profile("ci")


def corpus():
    """Small fat points used across the suite."""
    return {
        "l1": line_point(1),
        "l2": line_point(2),
        "l3": line_point(3),
        "sq": make_fat_point(("xi", "zeta"), ["xi^2", "zeta^2"], name="sq"),
        "o2": plane_jet(2),
        "v7": make_fat_point(("xi", "zeta"), ["xi^2", "xi*zeta^2", "zeta^3"], name="v7"),
    }


@pytest.fixture
def R():
    return PolyRing(["x", "y"], QQ)


@pytest.fixture
def R2():
    return PolyRing(["x", "y"], GF(2))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
