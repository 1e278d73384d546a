import pytest

from pebblegames.buildk3 import build
from pebblegames.params import FULL_K3, REDUCED_K3, Params


@pytest.fixture(scope="session")
def reduced3():
    return Params(3, 3, REDUCED_K3)


@pytest.fixture(scope="session")
def full3():
    return Params(3, 3, FULL_K3)


@pytest.fixture(scope="session")
def reduced_pair(reduced3):
    return build(reduced3)


@pytest.fixture(scope="session")
def shifted_pair(reduced3):
    return build(reduced3, shifted=True)


@pytest.fixture(scope="session")
def constants_pair(reduced3):
    return build(reduced3, shifted=True, constants=True)
