import numpy as np
import pytest

HAND = np.array([[1, 0, 1], [0, 1, 1]], dtype=complex)


def crandn(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def inv_trace(G):
    """Oracle: trace of the inverse through numpy's LU-based inv."""
    return float(np.real(np.trace(np.linalg.inv(G))))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def hand():
    return HAND.copy()
