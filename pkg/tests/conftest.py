import random

import pytest

from qmw.quandle import Quandle

# three elements: {0, 1} swapped by 2, everything else fixed
SMALL_TABLE = [[0, 1, 2], [0, 1, 2], [1, 0, 2]]


@pytest.fixture
def small_quandle():
    return Quandle(SMALL_TABLE)


@pytest.fixture
def rng():
    return random.Random(20240611)
