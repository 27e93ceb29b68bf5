import os

import pytest

ACCEPTANCE_RESULTS = []


def record_acceptance(number, title, ok, detail=""):
    ACCEPTANCE_RESULTS.append((number, title, bool(ok), detail))
    assert ok, f"acceptance {number} ({title}): {detail}"


def extended_enabled():
    return os.environ.get("SEXTICFORMS_EXTENDED", "") not in ("", "0")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
