"""Shared fixtures and the acceptance summary printed at the end of a run."""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from simplecurrents.fock import FockSpace

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number, title: str, ok: bool) -> bool:
    """Remember one acceptance line; it is printed in the terminal summary."""
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {title}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def a1_space():
    return FockSpace([[2]], "A1")


@pytest.fixture(scope="session")
def a2_space():
    return FockSpace([[2, -1], [-1, 2]], "A2")


@pytest.fixture
def half():
    return Fraction(1, 2)
