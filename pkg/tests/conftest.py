import pytest

from jaclink import CORPUS_DIR
from jaclink.polyring import RingContext
from jaclink.problem import load_problem

CORPUS = sorted(CORPUS_DIR.glob("*.prob"))

# filled by tests/test_acceptance.py, printed once at the end of the run
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def R3():
    return RingContext(("x", "y", "z"))


@pytest.fixture
def R3q():
    return RingContext(("x", "y", "z"), 0)


@pytest.fixture
def R2():
    return RingContext(("x", "y"))


def corpus_problem(name):
    return load_problem(CORPUS_DIR / f"{name}.prob")
