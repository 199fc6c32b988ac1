"""Shared fixtures.

The acceptance tests record one line per criterion; the terminal-summary
hook replays those lines after the run so they are visible even with
output capture on.
"""

import pytest

_acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance():
    """Recorder for acceptance criteria.

    Call it once per criterion with the criterion number, the boolean
    outcome, and a short detail string.  It prints the line, stores it for
    the terminal summary, and fails the test when the outcome is false.
    """

    def record(criterion: int, ok: bool, detail: str) -> None:
        line = f"criterion {criterion:2d} {'PASS' if ok else 'FAIL'}  {detail}"
        _acceptance_lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)
