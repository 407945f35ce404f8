import pytest

from tiltedsum import derive_chain


@pytest.fixture
def moderate():
    """The running asymmetric example: pi = (3/4, 1/4), lambda2 = 0.6."""
    return derive_chain(0.1, 0.3)


@pytest.fixture
def symmetric():
    return derive_chain(0.5, 0.5)


@pytest.fixture
def iid_quarter():
    """i.i.d. Bernoulli(1/4): a + b = 1 so lambda2 = 0."""
    return derive_chain(0.25, 0.75)


# (a, b) pairs spanning both correlation signs, used by grid-style checks.
PAIR_GRID = [
    (0.05, 0.15),
    (0.1, 0.3),
    (0.3, 0.1),
    (0.25, 0.75),
    (0.4, 0.2),
    (0.45, 0.55),
    (0.6, 0.7),
    (0.7, 0.9),
    (0.95, 0.85),
]
