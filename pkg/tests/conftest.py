import pytest

_acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Shared sink for one pass/fail line per acceptance criterion."""
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
