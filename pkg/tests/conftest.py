import numpy as np
import pytest

from besovlp import GaussianSampler, GridSpec, ValueSpace


@pytest.fixture
def grid64():
    return GridSpec(1, 64, 1.0)


@pytest.fixture
def grid128():
    return GridSpec(1, 128, 1.0)


@pytest.fixture
def grid2d():
    return GridSpec(2, 32, 1.0)


@pytest.fixture
def scalar_space():
    return ValueSpace.scalar()


@pytest.fixture
def sampler():
    return GaussianSampler(20240601, 20000)


@pytest.fixture
def rng():
    return np.random.default_rng(987)
