import pytest

from gentlecat.presentation import running_example, parse_presentation, \
    A2_EXAMPLE, POINT_EXAMPLE


@pytest.fixture(scope="session")
def pres():
    return running_example()


@pytest.fixture(scope="session")
def a2():
    return parse_presentation(A2_EXAMPLE)


@pytest.fixture(scope="session")
def point():
    return parse_presentation(POINT_EXAMPLE)
