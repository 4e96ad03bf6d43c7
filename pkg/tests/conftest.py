"""Shared fixtures: the acceptance registry and its per-criterion summary."""

from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

ACCEPTANCE_RESULTS: dict[int, tuple[str, bool, float]] = {}


class CriterionChecks:
    def __init__(self):
        self.failures: list[str] = []

    def check(self, label: str, ok: bool) -> None:
        if not ok:
            self.failures.append(label)


@pytest.fixture()
def criterion():
    @contextmanager
    def _criterion(number: int, title: str, budget: float):
        checks = CriterionChecks()
        t0 = time.perf_counter()
        try:
            yield checks
        except BaseException:
            ACCEPTANCE_RESULTS[number] = (title, False, time.perf_counter() - t0)
            raise
        elapsed = time.perf_counter() - t0
        if elapsed > budget:
            checks.failures.append(
                f"runtime {elapsed:.1f} s exceeds the {budget:.0f} s budget"
            )
        ok = not checks.failures
        ACCEPTANCE_RESULTS[number] = (title, ok, elapsed)
        assert ok, f"criterion {number} failed: " + "; ".join(checks.failures)

    return _criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, ok, elapsed = ACCEPTANCE_RESULTS[number]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"criterion {number:2d} [{status}] {elapsed:7.2f} s  {title}"
        )
