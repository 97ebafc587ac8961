import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Run a criterion check, remember its PASS/FAIL line and return the result."""

    def run(check):
        result = check()
        ACCEPTANCE_LINES.append(result.line())
        print(result.line())
        return result

    return run


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
