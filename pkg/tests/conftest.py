import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def grid_matrix(rng, n, m, signed=True):
    """Random matrix with entries on the tie-heavy grid {0, 0.1, ..., 1.0}."""
    Y = rng.integers(0, 11, size=(n, m)).astype(np.float64) / 10.0
    if signed:
        Y *= np.where(rng.random((n, m)) < 0.5, -1.0, 1.0)
    return np.asfortranarray(Y)
