import sys

import pytest

from gravloc.units import DEFAULT


@pytest.fixture
def const():
    return DEFAULT


def pytest_terminal_summary(terminalreporter):
    results = []
    for name, mod in list(sys.modules.items()):
        if name.endswith("test_acceptance"):
            results = getattr(mod, "RESULTS", [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in results:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
