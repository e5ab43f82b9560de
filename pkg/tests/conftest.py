import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from biharmonic_tanno import TannoStructure

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_A = (0.1, 0.25, 0.5, 0.75, 0.9)

a_values = st.floats(min_value=0.05, max_value=0.95, allow_nan=False)
seeds = st.integers(min_value=0, max_value=2**31 - 1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(params=ACCEPTANCE_A)
def struct(request):
    return TannoStructure(request.param)


@pytest.fixture
def half():
    return TannoStructure(0.5)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
