import math

import numpy as np
import pytest

import moranlab as ml


def random_connected_graphs(count, n_lo, n_hi, seed0=1000):
    """Deterministic list of small connected G(n,p) graphs (re-seeds until connected)."""
    graphs = []
    seed = seed0
    rng = np.random.default_rng(seed0)
    while len(graphs) < count:
        n = int(rng.integers(n_lo, n_hi + 1))
        p = float(rng.uniform(0.35, 0.7))
        g = ml.generate_gnp(n, p, seed)
        seed += 1
        if g.is_connected():
            graphs.append(g)
    return graphs


@pytest.fixture(scope="session")
def small_graphs():
    return random_connected_graphs(8, 4, 8)


def gnp_threshold(n, seed, eps=0.3):
    """A connected G(n, (log n + 2)/n) instance with its thresholds."""
    p = (math.log(n) + 2.0) / n
    attempt = seed
    while True:
        g = ml.generate_gnp(n, p, attempt)
        if g.is_connected():
            return g, p, ml.derive_thresholds(n, p, eps_override=eps)
        attempt += 1
