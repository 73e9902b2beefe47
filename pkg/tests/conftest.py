import pytest
from hypothesis import HealthCheck, settings

from shipsim.config import load_ship

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# lines printed by the acceptance suite, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def ship():
    return load_ship()


@pytest.fixture(scope="session")
def mmg_params(ship):
    return ship.mmg


@pytest.fixture(scope="session")
def symmetric_params(ship):
    return ship.mmg.laterally_symmetric()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

