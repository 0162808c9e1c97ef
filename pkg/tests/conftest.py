"""Shared test plumbing: the acceptance-criterion report.

Acceptance tests register a one-line verdict per criterion through
`record_criterion`; the lines are replayed in the terminal summary so the
pass/fail state of every criterion is visible in one block regardless of
output capturing.
"""

_ACCEPTANCE_LINES: list[str] = []


def record_criterion(name: str, passed: bool, detail: str) -> bool:
    """Register one criterion verdict and return ``passed`` for asserting."""
    verdict = "PASS" if passed else "FAIL"
    line = f"{name}: {verdict}  {detail}"
    _ACCEPTANCE_LINES.append(line)
    print(f"[acceptance] {line}")
    return passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for line in _ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
