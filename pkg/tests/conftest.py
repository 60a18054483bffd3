"""Shared pytest hooks: the acceptance summary table.

Acceptance tests record one line per criterion; the lines are replayed in a
terminal section after the run so the verdicts survive output capturing.
"""

ACCEPTANCE_LINES = []


def record_criterion(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
