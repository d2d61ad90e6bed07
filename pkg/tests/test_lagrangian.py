import numpy as np
import pytest

from core.errors import DegenerateTree, DimensionMismatch
from multitree.lagrangian import VARIABLES, lagrangian_residual, lagrangian_variables
from steiner.service import fermat_tree, pipeline_tree

SPLIT = ((0, 1), (2, 3))


@pytest.fixture
def solved(example_tree):
    points, weights, bst = example_tree
    return points, weights, bst, pipeline_tree(points, weights, bst, SPLIT)


def test_variables_at_the_solved_tree(solved):
    points, weights, _, tree = solved
    x = lagrangian_variables(points, weights, tree)
    assert x.shape == (len(VARIABLES),)
    O = tree.positions[4]
    assert x[0] == pytest.approx(np.linalg.norm(points[0] - O))
    assert np.all(x[6:] > 0)


def test_converged_tree_is_stationary(solved):
    system = lagrangian_residual(*solved)
    assert system.max_constraint_residual < 1e-8
    assert system.stationarity_residual <= 1e-5 * system.gradient_scale
    assert system.multipliers[0] == 1.0
    assert system.dropped == ()
    assert system.multipliers.shape == (8,)


def test_perturbed_variables_break_the_constraints(solved):
    points, weights, bst, tree = solved
    x = lagrangian_variables(points, weights, tree)
    x[0] *= 1.01
    system = lagrangian_residual(points, weights, bst, tree, variables=x)
    assert system.max_constraint_residual > 1e-6


def test_degenerate_trees_are_rejected(example_tree):
    points, weights, bst = example_tree
    with pytest.raises(DegenerateTree):
        lagrangian_residual(points, weights, bst, fermat_tree(points, weights))


def test_variable_count_is_checked(solved):
    points, weights, bst, tree = solved
    with pytest.raises(DimensionMismatch):
        lagrangian_residual(points, weights, bst, tree, variables=np.ones(3))


@pytest.mark.parametrize("seed", range(5))
def test_random_points_are_far_from_stationary(solved, seed):
    points, weights, bst, tree = solved
    converged = lagrangian_residual(points, weights, bst, tree)
    rng = np.random.default_rng(seed)
    x = lagrangian_variables(points, weights, tree)
    x[:6] *= 1 + 0.05 * rng.normal(size=6)
    system = lagrangian_residual(points, weights, bst, tree, variables=x)
    assert system.multipliers[0] == 1.0
    assert system.stationarity_residual >= 10 * converged.stationarity_residual


def test_edge_distances_agree_only_at_the_tree(solved):
    points, weights, bst, tree = solved
    x = lagrangian_variables(points, weights, tree)
    assert abs(lagrangian_residual(points, weights, bst, tree).constraints[6]) < 1e-8
    x[3] *= 1.02
    assert abs(lagrangian_residual(points, weights, bst, tree, variables=x).constraints[6]) > 1e-8
