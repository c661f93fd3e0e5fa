"""Pytest wiring: one visible pass/fail line per acceptance check.

The acceptance tests call record_acceptance() after their assertions
(or on the way out of a failure); the collected lines are printed in a
dedicated terminal section so the outcome of each numbered check is
readable even without -s.
"""

_ACCEPTANCE_LINES = []


def record_acceptance(line):
    _ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
