import pytest

# filled by tests/test_acceptance.py; printed once at the end of the run
CRITERIA = {}


def record(key, passed, detail):
    CRITERIA[key] = (bool(passed), detail)
    return passed


@pytest.fixture
def criterion():
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA, key=lambda k: (int("".join(c for c in k if c.isdigit())), k)):
        ok, detail = CRITERIA[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key:<4} {detail}")
