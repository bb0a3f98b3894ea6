import pytest

_verdicts: list[str] = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line per acceptance criterion, then enforce it."""

    def _record(num, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}"
        _verdicts.append(line)
        print(line)
        assert ok, line

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _verdicts:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in _verdicts:
            terminalreporter.write_line(line)
