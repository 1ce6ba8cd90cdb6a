import os

import pytest

from fewham.constructions import load_gadget, load_pattern, petersen

ACCEPTANCE_LINES = []

LONG = os.environ.get("FEWHAM_LONG") == "1"


@pytest.fixture(scope="session")
def P():
    return petersen()


@pytest.fixture(scope="session")
def gadget():
    return load_gadget()


@pytest.fixture(scope="session")
def pattern():
    return load_pattern()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
