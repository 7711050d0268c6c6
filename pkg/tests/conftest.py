import os
from functools import lru_cache

import pytest

from coxsort import CoxeterSystem, CoxeterElement

SLOW = os.environ.get("COXSORT_SLOW") == "1"

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def system(spec: str) -> CoxeterSystem:
    return CoxeterSystem.from_spec(spec)


def coxeter(spec: str, word) -> CoxeterElement:
    return CoxeterElement(system(spec), word)


@pytest.fixture
def B2():
    return system("B2")


@pytest.fixture
def c_B2():
    return coxeter("B2", (0, 1))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
