import pytest

_LINES = {}


@pytest.fixture(scope="session")
def criterion():
    """``criterion(k, ok, details)`` records and prints one acceptance line."""

    def record(k, ok, details):
        line = f"CRITERION {k}: {'PASS' if ok else 'FAIL'} ({details})"
        _LINES[k] = line
        print("\n" + line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_LINES):
        terminalreporter.write_line(_LINES[k])
