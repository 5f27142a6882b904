import os

# certificate cross-checks inside the library; must be set before the package imports
os.environ.setdefault("ECHELON_CHECK", "1")

import pytest  # noqa: E402

from echelonmotion.extensions import LinearExtension  # noqa: E402
from echelonmotion.families import n5, r5_example  # noqa: E402
from echelonmotion.poset import from_covers  # noqa: E402

# the worked 5-element example, rows and columns in identity-extension order
W_R5 = [[1, 0, 0, 0, 0],
        [1, 1, 0, 0, 0],
        [1, 0, 1, 0, 0],
        [1, 1, 1, 1, 0],
        [1, 1, 1, 1, 1]]
P_R5_ONES = [(1, 4), (2, 3), (3, 2), (4, 5), (5, 1)]  # (row, col), 1-based
ECH_R5 = (4, 2, 1, 0, 3)  # e1->e5, e2->e3, e3->e2, e4->e1, e5->e4


@pytest.fixture
def r5():
    return r5_example()


@pytest.fixture
def sigma0():
    return LinearExtension((1, 2, 3, 4, 5))


@pytest.fixture
def pentagon():
    return n5()


@pytest.fixture
def vposet():
    return from_covers(3, [(0, 1), (0, 2)], ["x", "y1", "y2"])


# -- acceptance summary ----------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def record_criterion(number: int, line: str) -> None:
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
