import numpy as np
import pytest

from qgk import catalog

SEED = 20260815


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session")
def wall32():
    return catalog.quantum_group("cstar:wall32")


@pytest.fixture(scope="session")
def cs3():
    return catalog.quantum_group("cstar:s3")


@pytest.fixture(scope="session")
def fs3():
    return catalog.quantum_group("fn:s3")


def random_element(q, rng, hermitian=False):
    x = rng.standard_normal(q.dim) + 1j * rng.standard_normal(q.dim)
    if hermitian:
        x = 0.5 * (x + q.star(x))
    return x
