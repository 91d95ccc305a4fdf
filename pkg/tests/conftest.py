import functools

import pytest

from beamspec.modes import build_modes
from beamspec.quadrature import BeamGeometry
from beamspec.supports import CASE_NAMES

UNIT = BeamGeometry(1.0)


@functools.lru_cache(maxsize=None)
def cached_modes(case: str, count: int = 12, length: float = 1.0):
    return tuple(build_modes(case, BeamGeometry(length), count))


@pytest.fixture
def unit():
    return UNIT


@pytest.fixture(params=CASE_NAMES)
def case_name(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
