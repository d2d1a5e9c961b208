import numpy as np
import pytest

from a23chain.params import ModelParams


@pytest.fixture(scope="session")
def eta():
    return 0.37


@pytest.fixture(scope="session")
def params2(eta):
    # N = 2 with distinct inhomogeneities and generic boundary fields
    return ModelParams(eta=eta, epsilon=0.23, epsilon_prime=-0.11,
                       thetas=(0.21, -0.34), n_sites=2)


@pytest.fixture(scope="session")
def benchmark_params():
    return ModelParams(eta=0.4, epsilon=0.0, epsilon_prime=0.0,
                       thetas=(0.0, 0.0), n_sites=2)
