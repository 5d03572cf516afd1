import numpy as np
import pytest

from orthoseed.measure import Atom, Measure


def random_discrete(rng, M, spread=1.0, min_gap=0.05):
    """Random discrete measure with well-separated atoms."""
    width = 2 * spread
    gap = min(min_gap * spread, width / (2 * M))
    # sorted uniforms on a shortened interval, then spread apart by the gap
    x = np.sort(rng.uniform(0, width - (M - 1) * gap, M)) + gap * np.arange(M) - spread
    nu = rng.uniform(0.1, 1.0, M)
    return Measure(atoms=[Atom(float(t), float(v)) for t, v in zip(x, nu)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
