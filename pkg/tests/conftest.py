import pytest

from bentparity.core import BooleanFunction, variables_product
from bentparity.oracle import all_bent_functions

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def x1x2():
    return variables_product(2, 1, 2)


@pytest.fixture
def x1x2_x3x4():
    return variables_product(4, 1, 2) ^ variables_product(4, 3, 4)


@pytest.fixture(scope="session")
def bent2():
    return all_bent_functions(2)


@pytest.fixture(scope="session")
def bent4():
    return all_bent_functions(4)


def random_function(rng, n):
    return BooleanFunction.from_bits(rng.integers(0, 2, 1 << n))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
