import itertools

import numpy as np
import pytest

from ergocoef.graph import Graph


def random_ematrix(rng: np.random.Generator, n: int, low: float = -5.0, high: float = 5.0) -> np.ndarray:
    """Uniform entries, then each row shifted so all rows sum to a common random value."""
    x = rng.uniform(low, high, size=(n, n))
    lam = rng.uniform(low, high)
    return x - ((x.sum(axis=1) - lam) / n)[:, None]


def random_graph(rng: np.random.Generator, n: int, density: float | None = None) -> Graph:
    q = rng.uniform(0.1, 0.9) if density is None else density
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < q]
    return Graph(n, edges)


def random_connected_graph(rng: np.random.Generator, n: int) -> Graph:
    # random spanning tree plus random extra edges
    order = rng.permutation(n)
    edges = {tuple(sorted((int(order[i]), int(order[rng.integers(0, i)])))) for i in range(1, n)}
    q = rng.uniform(0.0, 0.6)
    edges |= {(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < q}
    return Graph(n, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
