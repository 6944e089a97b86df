"""Acceptance reporting: one pass/fail line per criterion at the end of the run."""
import time

import pytest

TITLES = {
    1: "tau_bar reproduction (lam=2, sigma=1)",
    2: "deviation interval reproduction (x0=1, lam=2, sigma=1)",
    3: "oracle equivalence",
    4: "adaptive-init guarantee",
    5: "error-bound sandwich",
    6: "Q-linear rate",
    7: "Lambert W quality",
    8: "property suites",
}
SUITE_BUDGET_S = 300.0

_results = {}
_suite = {"passed": 0, "failed": 0, "start": None}


class Recorder:
    def __call__(self, criterion, part, ok, detail):
        _results.setdefault(criterion, []).append((part, bool(ok), detail))
        print(f"criterion {criterion} [{part}] {'PASS' if ok else 'FAIL'}: {detail}")
        return ok


@pytest.fixture
def record():
    return Recorder()


def pytest_sessionstart(session):
    _suite["start"] = time.perf_counter()


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid:
        return
    if report.when == "call" and report.passed:
        _suite["passed"] += 1
    elif report.failed:
        _suite["failed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for c in range(1, 8):
        parts = _results.get(c)
        if not parts:
            tr.write_line(f"criterion {c} NOT RUN  {TITLES[c]}")
            continue
        ok = all(p[1] for p in parts)
        detail = "; ".join(f"{name}: {d} ({'ok' if good else 'FAIL'})" for name, good, d in parts)
        tr.write_line(f"criterion {c} {'PASS' if ok else 'FAIL'}  {TITLES[c]} | {detail}")
    n_prop = _suite["passed"] + _suite["failed"]
    if n_prop == 0:
        tr.write_line(f"criterion 8 NOT RUN  {TITLES[8]} (run the full suite)")
        return
    elapsed = time.perf_counter() - _suite["start"]
    ok = _suite["failed"] == 0 and elapsed < SUITE_BUDGET_S
    tr.write_line(
        f"criterion 8 {'PASS' if ok else 'FAIL'}  {TITLES[8]} | "
        f"{_suite['passed']} passed, {_suite['failed']} failed; "
        f"runtime {elapsed:.1f}s (budget {SUITE_BUDGET_S:.0f}s)")
