import pytest

_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    def log(line: str) -> None:
        print(line)
        _LINES.append(line)
    return log


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
