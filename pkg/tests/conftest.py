"""Collects the acceptance verdicts so they print together at the end of a run."""

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split('#')[1].split()[0])):
        terminalreporter.write_line(line)
