import random

import pytest

from streamsub.oracles import SetFunction


@pytest.fixture
def rng():
    return random.Random(20240817)


def random_monotone_function(n, rnd, spread=6):
    """Random monotone (not necessarily submodular) integer set function."""
    vals = {0: 0}
    for mask in range(1, 1 << n):
        floor = max(vals[mask & ~(1 << e)] for e in range(n) if mask >> e & 1)
        vals[mask] = floor + rnd.randrange(0, spread)
    return SetFunction(n, lambda s: vals[sum(1 << e for e in s)], name="random-monotone")


def random_function(n, rnd, spread=12):
    vals = {mask: rnd.randrange(0, spread) for mask in range(1 << n)}
    vals[0] = 0
    return SetFunction(n, lambda s: vals[sum(1 << e for e in s)], name="random")
