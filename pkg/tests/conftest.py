"""Shared test plumbing: the acceptance-criteria summary block."""

ACCEPTANCE_LINES = []


def record_criterion(number, ok, detail, elapsed):
    """Register one acceptance verdict and echo it into the test output."""
    verdict = "PASS" if ok else "FAIL"
    line = f"criterion {number}: {verdict} - {detail} ({elapsed:.2f}s)"
    ACCEPTANCE_LINES.append((number, line))
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
