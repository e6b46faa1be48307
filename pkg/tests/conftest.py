import numpy as np
import pytest

from sifbm import Rectangle, rectangles

# pass/fail lines recorded by the acceptance tests; echoed in the
# terminal summary so they survive output capture
ACCEPTANCE_LINES = []


@pytest.fixture
def rect2():
    return rectangles(2)


@pytest.fixture
def four_rectangles():
    # the four plane rectangles on which positive definiteness fails for
    # large H: corners (1,1), (2,1), (1,2), (2,2)
    return [
        Rectangle((1.0, 1.0)),
        Rectangle((2.0, 1.0)),
        Rectangle((1.0, 2.0)),
        Rectangle((2.0, 2.0)),
    ]


@pytest.fixture
def rng():
    return np.random.default_rng(20260816)


@pytest.fixture
def criterion_line():
    def record(text):
        ACCEPTANCE_LINES.append(text)
        print(text)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for text in ACCEPTANCE_LINES:
        terminalreporter.write_line(text)
