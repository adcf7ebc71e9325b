import pytest
from hypothesis import strategies as st

from bsgrowth.group import LETTERS, BaumslagSolitar, GroupElement, normalize

ks = st.integers(min_value=2, max_value=7)
words = st.lists(st.sampled_from(LETTERS), max_size=12).map(tuple)


@st.composite
def elements(draw, k=None):
    if k is None:
        k = draw(ks)
    num = draw(st.integers(-500, 500))
    exp = draw(st.integers(0, 3))
    m = draw(st.integers(-4, 4))
    return GroupElement(normalize(num, exp, k), m)


@st.composite
def element_pairs(draw, n=2):
    k = draw(ks)
    return tuple(draw(elements(k)) for _ in range(n))


@pytest.fixture(scope="session")
def oracle_cache(tmp_path_factory):
    return tmp_path_factory.mktemp("oracle-cache")


@pytest.fixture
def G2():
    return BaumslagSolitar(2)


@pytest.fixture
def G3():
    return BaumslagSolitar(3)


# acceptance verdicts, echoed once at the end of the run
ACCEPTANCE_LINES = []


def record(line: str) -> None:
    print(line)
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
