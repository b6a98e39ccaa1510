import pytest

_LINES = []


@pytest.fixture
def criterion():
    """Record one summary line per acceptance criterion."""
    def record(number, ok, detail, informational=False):
        status = "INFO" if informational else ("PASS" if ok else "FAIL")
        line = f"criterion {number}: {status}  {detail}"
        _LINES.append((number, line))
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_LINES):
        terminalreporter.write_line(line)
