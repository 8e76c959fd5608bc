import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from quasidet.rings import Rationals, SquareMatrices


@pytest.fixture
def rng():
    return random.Random(0xA11CE)


@pytest.fixture
def Q():
    return Rationals()


@pytest.fixture
def M2():
    return SquareMatrices(2)


@pytest.fixture
def M3():
    return SquareMatrices(3)
