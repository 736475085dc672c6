"""Shared pytest plumbing: the acceptance summary table.

Acceptance tests register one line each through the `acceptance` fixture;
the lines are printed as a terminal section after the run so the verdicts
survive output capturing.
"""

from __future__ import annotations

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    def record(name: str, ok: bool, detail: str, seconds: float | None = None) -> None:
        verdict = "PASS" if ok else "FAIL"
        stamp = "" if seconds is None else f"  [{seconds:.1f}s]"
        ACCEPTANCE_LINES.append(f"{name} {verdict}  {detail}{stamp}")
        assert ok, f"{name}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance summary")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
