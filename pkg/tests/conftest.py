import numpy as np
import pytest

from orbitkit import preset


@pytest.fixture(scope="session")
def su2():
    return preset("su", 2)


@pytest.fixture(scope="session")
def su3():
    return preset("su", 3)


@pytest.fixture(scope="session")
def u1():
    return preset("u", 1)


@pytest.fixture(scope="session")
def u2():
    return preset("u", 2)


@pytest.fixture(scope="session")
def u3():
    return preset("u", 3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
