import random
from fractions import Fraction
from pathlib import Path

import pytest

from involute.exactlin import Matrix

GOLDEN = Path(__file__).parent / "golden"
DATA = Path(__file__).parent / "data"


def rand_matrix(rng: random.Random, rows: int, cols: int, lo: int = -9, hi: int = 9) -> Matrix:
    return Matrix([[Fraction(rng.randint(lo, hi)) for _ in range(cols)] for _ in range(rows)], cols=cols)


@pytest.fixture
def rng():
    return random.Random(20240501)
