import random

import pytest

from tests.helpers import su3_pair


@pytest.fixture
def su3_case1():
    return su3_pair((1, 2))


@pytest.fixture
def su3_case2():
    return su3_pair((0, 2))


@pytest.fixture
def rng():
    return random.Random(20240531)
