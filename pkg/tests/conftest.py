from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from a5geom.verify.scenario import Scenario

settings.register_profile(
    "exact",
    max_examples=1000,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("exact")


@pytest.fixture(scope="session")
def sc() -> Scenario:
    return Scenario.load()


def pytest_terminal_summary(terminalreporter):
    from criteria import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(RESULTS, key=lambda l: int(l.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
