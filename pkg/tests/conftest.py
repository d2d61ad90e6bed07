import numpy as np
import pytest

from realizability.types import EdgeTuple
from steiner.service import EXAMPLE_BST, EXAMPLE_VERTICES, EXAMPLE_WEIGHTS

# multitetrahedron of 7..12: columns a12, a43, a13, a23, a24, a14 and the determinant D
TABLE_ROWS = [
    ((12, 7, 11, 10, 9, 8), 1905982),
    ((12, 7, 11, 10, 8, 9), 1994518),
    ((12, 7, 11, 9, 10, 8), 1843168),
    ((12, 7, 11, 9, 8, 10), 2200288),
    ((12, 7, 11, 8, 9, 10), 2179582),
    ((12, 7, 11, 8, 10, 9), 1910998),
    ((12, 8, 11, 10, 9, 7), 1808302),
    ((12, 8, 11, 10, 7, 9), 1914478),
    ((12, 8, 11, 9, 10, 7), 1811038),
    ((12, 8, 11, 9, 7, 10), 2133358),
    ((12, 8, 11, 7, 10, 9), 1918558),
    ((12, 8, 11, 7, 9, 10), 2134702),
    ((12, 9, 11, 10, 8, 7), 1642518),
    ((12, 9, 11, 10, 7, 8), 1660158),
    ((12, 9, 11, 8, 7, 10), 1986750),
    ((12, 9, 11, 8, 10, 7), 1823958),
    ((12, 9, 11, 7, 10, 8), 1863648),
    ((12, 9, 11, 7, 8, 10), 2008800),
    ((12, 10, 11, 9, 8, 7), 1397038),
    ((12, 10, 11, 9, 7, 8), 1362238),
    ((12, 10, 11, 8, 9, 7), 1575742),
    ((12, 10, 11, 8, 7, 9), 1469950),
    ((12, 10, 11, 7, 8, 9), 1557550),
    ((12, 10, 11, 7, 9, 8), 1628542),
    ((12, 11, 10, 9, 8, 7), 664558),
    ((12, 11, 10, 9, 7, 8), 612118),
    ((12, 11, 10, 8, 9, 7), 863968),
    ((12, 11, 10, 8, 7, 9), 652000),
    ((12, 11, 10, 7, 8, 9), 717550),
    ((12, 11, 10, 7, 9, 8), 877078),
]

# unit-weight Fermat length and circumradius for rows with published values
MINF = {
    (12, 7, 11, 10, 8, 9): 22.7838,
    (12, 7, 11, 9, 8, 10): 22.9123,
    (12, 11, 10, 9, 7, 8): 23.3949,
    (12, 7, 11, 10, 9, 8): 22.8131,
    (12, 11, 10, 9, 8, 7): 23.4331,
}
CIRCUMRADIUS = {
    (12, 7, 11, 10, 8, 9): 6.59837,
    (12, 7, 11, 9, 8, 10): 6.28226,
    (12, 11, 10, 9, 7, 8): 6.24406,
    (12, 7, 11, 10, 9, 8): 6.62431,
}


@pytest.fixture
def consecutive_tuple():
    return EdgeTuple.consecutive(7, 3)


@pytest.fixture
def table_rows():
    return TABLE_ROWS


@pytest.fixture
def example_tree():
    return np.array(EXAMPLE_VERTICES), np.array(EXAMPLE_WEIGHTS), EXAMPLE_BST


@pytest.fixture
def regular_tetrahedron():
    return np.array([[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]])


@pytest.fixture
def scalene_tetrahedron():
    return np.array([[0.0, 0.0, 0.0], [4.0, 0.0, 0.0], [1.0, 3.0, 0.0], [1.0, 1.0, 3.0]])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
