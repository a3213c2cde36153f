import pytest

ACCEPTANCE: dict = {}


@pytest.fixture
def record():
    """record(key, passed, detail): one acceptance line, printed in the terminal summary."""

    def _record(key, passed, detail):
        ACCEPTANCE[key] = (bool(passed), detail)
        return bool(passed)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int("".join(c for c in k if c.isdigit()) or 0), k)):
        passed, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:<3} {'PASS' if passed else 'FAIL'}  {detail}")
