import numpy as np
import pytest
from hypothesis import settings

from tpds.datagen import random_tensor

settings.register_profile('tpds', deadline=None, max_examples=200)
settings.load_profile('tpds')


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def make_tensor():
    """Factory for seeded random tensors: make_tensor(n, m, r, seed=0)."""
    def factory(n, m, r, seed=0):
        return random_tensor(n, m, r, seed=seed)
    return factory
