import pytest

from liftlab.measure_space import build_space


@pytest.fixture(scope="session")
def s1():
    """Two unit atoms plus one null atom: masks a=1, b=2, n=4."""
    return build_space([1, 1, 0])


@pytest.fixture(scope="session")
def s2():
    """Two unit atoms plus two null atoms."""
    return build_space([1, 1, 0, 0])


@pytest.fixture(scope="session")
def no_null():
    return build_space([1, 2])
