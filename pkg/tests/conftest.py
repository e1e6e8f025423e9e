import math
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from gearmap.geartools import renormalized_gear_map
from gearmap.schwarzian import MapParams

settings.register_profile(
    "gearmap",
    deadline=None,
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("gearmap")

# (t, lam) reported for the ten-tooth example with beta = 1.3**10, gamma = pi/2
TEN_TOOTH = (0.6024, -0.0029)


@lru_cache(maxsize=None)
def gear_map(t: float, lam: float):
    return renormalized_gear_map(MapParams(t, lam))


@pytest.fixture(scope="session")
def ten_tooth_map():
    return gear_map(*TEN_TOOTH).standardized()


@pytest.fixture(scope="session")
def quarter_map():
    return gear_map(math.pi / 4, 0.0)


# (number, title, passed, detail) filled in by test_acceptance.py
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, title, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"AC{n:<2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
