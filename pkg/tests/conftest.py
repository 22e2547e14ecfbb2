import pytest

from latkit.core import boolean_lattice, chain, m3, n5
from latkit.enumeration import catalog

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def M3():
    return m3()


@pytest.fixture(scope="session")
def N5():
    return n5()


@pytest.fixture(scope="session")
def B4():
    return boolean_lattice(2, name="B4")


@pytest.fixture(scope="session")
def C3():
    return chain(3)


@pytest.fixture(scope="session")
def small_catalog():
    """All lattices with at most 6 elements."""
    return list(catalog(6))


@pytest.fixture(scope="session")
def catalog7():
    return list(catalog(7))


@pytest.fixture(scope="session")
def acceptance_lines():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line[1])
