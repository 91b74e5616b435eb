import pytest

from brieskorn.strata import BettiTable

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def betti():
    return BettiTable.default()


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
