import pytest

from hcp.goldens import EX5E, G1, G2, K5


@pytest.fixture
def g1():
    return G1


@pytest.fixture
def g2():
    return G2


@pytest.fixture
def k5():
    return K5


@pytest.fixture
def ex5e():
    return EX5E
