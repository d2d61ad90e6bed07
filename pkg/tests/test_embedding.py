import numpy as np
import pytest

from conftest import TABLE_ROWS
from core.errors import BadWeights, NotRealizable
from embedding.service import (barycentric_coordinates, embed_distance_matrix, embed_simplex, gram_matrix,
                               interior_point, random_interior_point)
from geometry.types import DistanceMatrix
from realizability.types import EdgeAssignment


@pytest.mark.parametrize("columns", [c for c, _ in TABLE_ROWS[::5]])
def test_embedding_reproduces_lengths(columns):
    assign = EdgeAssignment.from_paper_columns(*columns)
    simplex = embed_simplex(assign)
    assert simplex.max_distance_error < 1e-9
    np.testing.assert_allclose(simplex.distance_matrix.d, assign.distance_matrix().d, rtol=1e-9)


def test_embedding_normal_form():
    simplex = embed_simplex(EdgeAssignment.from_paper_columns(12, 7, 11, 10, 8, 9))
    v = simplex.vertices
    np.testing.assert_array_equal(v[0], np.zeros(3))
    assert v[1, 1] == v[1, 2] == 0.0
    assert v[2, 2] == 0.0
    assert v[1, 0] > 0 and v[2, 1] > 0 and v[3, 2] > 0


def test_four_simplex_embedding():
    points = np.array([[0, 0, 0, 0], [3, 0, 0, 0], [1, 2, 0, 0], [1, 1, 2, 0], [0.5, 1, 1, 1.5]], dtype=float)
    simplex = embed_distance_matrix(DistanceMatrix.from_points(points))
    assert simplex.N == 4
    assert simplex.max_distance_error < 1e-9


def test_gram_matrix_is_positive_definite():
    dm = EdgeAssignment.from_paper_columns(12, 8, 11, 9, 7, 10).distance_matrix()
    assert np.all(np.linalg.eigvalsh(gram_matrix(dm)) > 0)


def test_unrealizable_embedding_fails():
    with pytest.raises(NotRealizable):
        embed_simplex(EdgeAssignment.from_lengths([1, 1, 1, 1, 1, 1.9]))


def test_random_interior_point_is_inside(rng):
    simplex = embed_simplex(EdgeAssignment.from_paper_columns(12, 7, 11, 10, 9, 8))
    for _ in range(5):
        lam = barycentric_coordinates(simplex, random_interior_point(simplex, rng))
        assert np.all(lam > 0)
        assert lam.sum() == pytest.approx(1.0)


def test_interior_point_from_barycentric_weights():
    simplex = embed_simplex(EdgeAssignment.from_paper_columns(12, 7, 11, 10, 9, 8))
    point = interior_point(simplex, [0.25, 0.25, 0.25, 0.25])
    np.testing.assert_allclose(point, simplex.centroid)
    with pytest.raises(BadWeights):
        interior_point(simplex, [0.5, 0.5, 0.5, -0.5])
