import pytest

from grsq import GF

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def F307():
    return GF(307)


@pytest.fixture(scope="session")
def F512():
    return GF(512)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
