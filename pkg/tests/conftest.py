import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE = []


def branching_numbers(max_value=10**5):
    return st.integers(0, max_value // 18 - 1).flatmap(
        lambda k: st.sampled_from([18 * k + 4, 18 * k + 16])
    )


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, status in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{status}] {number:>2}. {name}")
