import pytest

from heckecat.coxeter import CoxeterSystem, Element
from heckecat.groupspec import preset
from heckecat.hecke import HeckeAlgebra

B3_MATRIX = [[1, 4, 2], [4, 1, 3], [2, 3, 1]]

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda x: int(x.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)


def el(*letters: int) -> Element:
    """Element from a 1-based word that is already ShortLex-normal."""
    return Element(tuple(s - 1 for s in letters))


@pytest.fixture(scope="session")
def b2():
    return CoxeterSystem([[1, 4], [4, 1]], [0, 1])


@pytest.fixture(scope="session")
def g2():
    return CoxeterSystem([[1, 6], [6, 1]], [0, 1])


@pytest.fixture(scope="session")
def b3():
    return CoxeterSystem(B3_MATRIX, [1, 0, 0])


@pytest.fixture(scope="session")
def iinf():
    return CoxeterSystem([[1, 0], [0, 1]], [0, 1])


@pytest.fixture(scope="session")
def hb2(b2):
    return HeckeAlgebra(b2)


@pytest.fixture(scope="session")
def hg2(g2):
    return HeckeAlgebra(g2)


@pytest.fixture(scope="session")
def hb3(b3):
    return HeckeAlgebra(b3)


@pytest.fixture
def b2_spec():
    return preset("B2", [0, 1], ["s", "t"])
