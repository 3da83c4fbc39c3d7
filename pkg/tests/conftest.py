import numpy as np
import pytest

from maxjsr import MatrixSet, MaxMatrix

# 3x3 pair with joint spectral radius exactly 1, attained by a length-3
# product of the members; the aggregate of the two is irreducible with left
# eigenvector proportional to (1, 1/2, 5/3).
GOLD_A1_ROWS = [
    [1 / 3, 1 / 2, 1.0],
    [3 / 4, 2 / 3, 1 / 5],
    [3 / 5, 1 / 5, 0.0],
]
GOLD_A2_ROWS = [
    [0.0, 1 / 4, 1 / 2],
    [0.0, 4 / 5, 10 / 3],
    [1 / 4, 0.0, 1 / 4],
]
GOLD_AGGREGATE_ROWS = [
    [1 / 3, 1 / 2, 1.0],
    [3 / 4, 4 / 5, 10 / 3],
    [3 / 5, 1 / 5, 1 / 4],
]


def golden_pair() -> MatrixSet:
    return MatrixSet([("A1", MaxMatrix(GOLD_A1_ROWS)), ("A2", MaxMatrix(GOLD_A2_ROWS))])


@pytest.fixture
def golden_set() -> MatrixSet:
    return golden_pair()


def random_entries(rng, n, density=1.0, low=0.1, high=10.0) -> np.ndarray:
    entries = np.exp(rng.uniform(np.log(low), np.log(high), (n, n)))
    if density >= 1.0:
        return entries
    mask = rng.random((n, n)) < density
    return np.where(mask, entries, 0.0)
