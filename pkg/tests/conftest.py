import numpy as np
import pytest

from plurikernel import domains as dom
from plurikernel.geodesic import SolverConfig


@pytest.fixture(scope="session")
def ball2():
    return dom.ball(2)


@pytest.fixture(scope="session")
def ellipsoid_1_4():
    return dom.ellipsoid([1.0, 4.0])


@pytest.fixture(scope="session")
def ellipsoid_1_2():
    return dom.ellipsoid([1.0, 2.0])


@pytest.fixture(scope="session")
def cfg32():
    return SolverConfig(modes=32)


@pytest.fixture(scope="session")
def cfg24():
    return SolverConfig(modes=24, newton_tol=1e-9)


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
