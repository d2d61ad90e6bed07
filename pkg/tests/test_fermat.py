import math

import numpy as np
import pytest
from scipy import optimize

from core.errors import BadWeights, DegenerateInput, DimensionMismatch, MaxIterations
from fermat.service import absorbing_test, balance_residual, fermat_objective, fermat_service, solve_fermat
from fermat.types import FermatKind, WeightVector


def test_equilateral_triangle_centroid():
    points = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])
    sol = solve_fermat(points, [1, 1, 1])
    assert sol.kind is FermatKind.FLOATING
    assert sol.label == "Floating"
    np.testing.assert_allclose(sol.point, points.mean(axis=0), atol=1e-9)
    assert sol.objective == pytest.approx(math.sqrt(3))


def test_square_center():
    points = np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])
    sol = solve_fermat(points, WeightVector.unit(4))
    np.testing.assert_allclose(sol.point, [0.0, 0.0], atol=1e-9)
    assert sol.objective == pytest.approx(4 * math.sqrt(2))


def test_dominant_weight_absorbs(regular_tetrahedron):
    sol = solve_fermat(regular_tetrahedron, [10, 1, 1, 1])
    assert sol.kind is FermatKind.ABSORBED
    assert sol.label == "AbsorbedAt(1)"
    np.testing.assert_array_equal(sol.point, regular_tetrahedron[0])
    assert absorbing_test(regular_tetrahedron, [10, 1, 1, 1], 0)
    assert not absorbing_test(regular_tetrahedron, [1, 1, 1, 1], 0)


def test_floating_point_balances(rng):
    points = rng.normal(size=(6, 3))
    points /= np.linalg.norm(points, axis=1, keepdims=True)
    weights = rng.uniform(0.9, 1.1, size=6)
    sol = solve_fermat(points, weights)
    assert sol.is_floating
    assert balance_residual(points, weights, sol.point) <= 1e-9 * weights.sum()


def test_matches_generic_minimizer():
    points = np.array([[0.0, 0.0], [4.0, 0.0], [0.0, 3.0], [5.0, 5.0]])
    weights = np.array([1.0, 2.0, 1.5, 0.7])
    sol = solve_fermat(points, weights)
    reference = optimize.minimize(lambda x: fermat_objective(points, weights, x), points.mean(axis=0),
                                  method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-12})
    assert sol.objective <= reference.fun + 1e-9


def test_iteration_limit_keeps_the_best_point():
    points = np.array([[0.0, 0.0], [4.0, 0.0], [0.0, 3.0], [5.0, 5.0]])
    with pytest.raises(MaxIterations) as info:
        solve_fermat(points, [1.0, 2.0, 1.5, 0.7], max_iterations=1)
    assert info.value.best is not None
    assert info.value.exit_code == 4


def test_collinear_points_are_rejected():
    with pytest.raises(DegenerateInput):
        solve_fermat([[0, 0], [1, 0], [2, 0]], [1, 1, 1])


def test_duplicate_points_are_rejected():
    with pytest.raises(DegenerateInput):
        solve_fermat([[0, 0], [1, 0], [1, 0], [0, 1]], [1, 1, 1, 1])


def test_weight_validation():
    with pytest.raises(BadWeights):
        WeightVector.of([1.0, 0.0, 0.0])
    with pytest.raises(BadWeights):
        WeightVector.of([1.0, -1.0, 2.0])
    with pytest.raises(DimensionMismatch):
        solve_fermat([[0, 0], [1, 0], [0, 1]], WeightVector.unit(4))


def test_vertex_objectives():
    points = [[0.0, 0.0], [3.0, 0.0], [0.0, 4.0]]
    assert fermat_service.vertex_objectives(points, [1, 1, 1]) == pytest.approx([7.0, 8.0, 9.0])
