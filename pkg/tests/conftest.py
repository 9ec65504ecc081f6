"""Collects the acceptance report lines and prints them after the run."""

ACCEPTANCE_LINES = {}


def record(criterion, passed, detail):
    ACCEPTANCE_LINES[criterion] = f"criterion {criterion:>2}: {'PASS' if passed else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
