import numpy as np
import pytest

from piaspline import datasets
from piaspline.collocation import assemble_collocation, assemble_QB_closed


@pytest.fixture(scope="session")
def duck():
    return datasets.duck_points()


@pytest.fixture(scope="session")
def duck_system(duck):
    return assemble_collocation(duck)


@pytest.fixture(scope="session")
def duck_preconditioned(duck_system):
    return assemble_QB_closed(duck_system)


def random_params(rng, n, lo_gap=0.2, hi_gap=1.0):
    """Strictly increasing parameters in [0, 1] with bounded gap ratios."""
    gaps = rng.uniform(lo_gap, hi_gap, size=n - 1)
    t = np.concatenate([[0.0], np.cumsum(gaps)])
    return t / t[-1]


def random_system(rng, n_max=40, n_min=4, dim=None):
    """A random valid collocation system (random spacing, random data)."""
    n = int(rng.integers(n_min, n_max + 1))
    d = int(dim if dim is not None else rng.choice([2, 3]))
    params = random_params(rng, n)
    points = rng.standard_normal((n, d))
    return assemble_collocation(points, params=params)
