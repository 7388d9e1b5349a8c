import sys

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from estarlab.bioperations import BiopContext
from estarlab.operations import bind_operation
from estarlab.space import FiniteSpace, generated_opens
from estarlab.verifier.corpus import PROFILES, default_points, random_operation
from estarlab.verifier.goldens import workspace

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def spaces(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_n, max_n))
    full = (1 << n) - 1
    sub = draw(st.lists(st.integers(0, full), max_size=n + 2))
    return FiniteSpace(default_points(n), generated_opens(n, sub))


@st.composite
def operations(draw, space):
    profile = draw(st.sampled_from(PROFILES))
    density = draw(st.sampled_from([0.0, 0.2, 0.5, 1.0]))
    seed = draw(st.integers(0, 2**16))
    return bind_operation(space, random_operation(space, seed, 0, profile, density))


@st.composite
def contexts(draw, min_n=1, max_n=4):
    s = draw(spaces(min_n, max_n))
    return BiopContext(s, draw(operations(s)), draw(operations(s)))


@pytest.fixture(scope="session")
def examples():
    return {k: workspace(k) for k in ("w", "u", "v", "t", "z", "s")}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
