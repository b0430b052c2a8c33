from __future__ import annotations

import pytest

from facetforge.demo import build_demo_engine

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def demo_engine():
    return build_demo_engine()


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        name = report.nodeid.split("::")[-1].removeprefix("test_")
        _ACCEPTANCE_RESULTS.append((name, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"ACCEPTANCE {name}: {outcome}")
