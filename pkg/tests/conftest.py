"""Shared test plumbing: collect the acceptance-criterion verdict lines
and echo them in the terminal summary, where output capture cannot
swallow them."""

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
