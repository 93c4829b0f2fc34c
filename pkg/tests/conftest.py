import random

import pytest

from skewfree import builtin


@pytest.fixture(scope="session")
def configs():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = builtin(name)
        return cache[name]

    return get


@pytest.fixture
def rng():
    return random.Random(1234)
