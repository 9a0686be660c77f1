import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cramanujan import build_table  # noqa: E402


@pytest.fixture(scope="session")
def small_table():
    return build_table(10**5)


@pytest.fixture(scope="session")
def table():
    """Covers every list needed through 10^6 for c <= 0.90."""
    return build_table(5 * 10**6)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
