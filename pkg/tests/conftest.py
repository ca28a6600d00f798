import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from shared import ACCEPTANCE_LINES, system  # noqa: E402


@pytest.fixture
def H3():
    return system("H3")


@pytest.fixture
def nonconvex3():
    return system("nonconvex3")


@pytest.fixture
def A2():
    return system("A2")


@pytest.fixture
def dihedral():
    return system("affineA1")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
