import math

import numpy as np
import pytest

from core.errors import DomainError, ParallelEdges, WeightsInfeasible
from fermat.service import weighted_fermat
from steiner.dihedral import (concircularity_check, concircularity_deviation, dihedral_fixed_point,
                              existence_check, locate_nodes, node_angle, simpson_geometry, simpson_length,
                              steiner_angles, with_nodes)
from steiner.service import bst_from_node_weights, fermat_tree, pipeline_tree, solve_steiner_tetrahedron
from steiner.topology import solve_steiner_topology, tree_length
from steiner.types import SteinerTopology

SPLIT = ((0, 1), (2, 3))


def test_node_angle():
    assert node_angle(1, 1, 1) == pytest.approx(2 * math.pi / 3)
    angles = steiner_angles(1, 1, 1, 1, 1)
    assert all(a == pytest.approx(2 * math.pi / 3) for a in angles)
    with pytest.raises(WeightsInfeasible):
        node_angle(1, 1, 2.5)


def test_existence_check(example_tree, regular_tetrahedron):
    points, weights, bst = example_tree
    assert existence_check(points, weights, bst, SPLIT)
    assert existence_check(regular_tetrahedron, np.ones(4), 1.0)
    assert not existence_check(regular_tetrahedron, np.ones(4), 1.415)


def test_scaffold_of_the_worked_example(example_tree):
    scaffold = simpson_geometry(*example_tree, SPLIT)
    assert scaffold.swapped
    assert math.degrees(scaffold.phi) == pytest.approx(74.2572, abs=1e-3)
    assert scaffold.H == pytest.approx(5.0, abs=1e-9)
    np.testing.assert_allclose(scaffold.M12, [0.0, -0.5638, 0.0], atol=1e-3)
    assert scaffold.s12 == pytest.approx(-4.73376, abs=1e-4)
    assert scaffold.s34 == pytest.approx(-4.9963, abs=1e-3)


def test_dihedral_angles_of_the_worked_example(example_tree):
    solution = dihedral_fixed_point(simpson_geometry(*example_tree, SPLIT))
    assert math.degrees(solution.plane_angle12) == pytest.approx(58.610, abs=2e-3)
    assert math.degrees(solution.plane_angle34) == pytest.approx(57.821, abs=2e-3)
    assert abs(math.degrees(solution.alpha)) == pytest.approx(52.138, abs=2e-3)
    assert solution.residual < 1e-9


def test_simpson_line_meets_both_edges(example_tree):
    solution = with_nodes(dihedral_fixed_point(simpson_geometry(*example_tree, SPLIT)))
    assert abs(solution.T12_local[1]) < 1e-6
    np.testing.assert_allclose(solution.scaffold.to_local(solution.T12), solution.T12_local, atol=1e-9)
    assert solution.M12H12 == solution.scaffold.s12
    assert concircularity_check(solution) < 1e-4
    assert "nodes-outside-segment" not in solution.diagnostics


def test_simpson_line_ends_near_the_rounded_construction(example_tree):
    solution = with_nodes(dihedral_fixed_point(simpson_geometry(*example_tree, SPLIT)))
    np.testing.assert_allclose(solution.T12, [3.146, 0.323, 0.0], atol=1e-3)
    np.testing.assert_allclose(solution.T34, [0.0, 2.606, 5.0], atol=1e-3)
    np.testing.assert_allclose(solution.T12, [3.16, 0.33, 0.0], atol=0.02)
    np.testing.assert_allclose(solution.T34[:2], [0.0, 2.61], atol=0.01)


def test_concircularity_of_rounded_points():
    points = [(0.0, 2.61), (3.16, 2.61), (3.16, 0.33), (0.83, -0.33), (0.0, 0.33)]
    assert concircularity_deviation(points) < 5e-3
    shifted = points[:4] + [(0.1, 0.33)]
    assert concircularity_deviation(shifted) > 1e-2


def test_pipeline_tree_of_the_worked_example(example_tree):
    points, weights, bst = example_tree
    tree = pipeline_tree(points, weights, bst, SPLIT)
    assert tree.method == "simpson"
    assert tree.weighted_length == pytest.approx(15.25268, abs=1e-4)
    assert tree.weighted_length == pytest.approx(simpson_length(tree.dihedral), rel=1e-9)
    assert np.max(tree.balance_residuals) < 1e-8


def test_descent_agrees_with_the_pipeline(example_tree):
    points, weights, bst = example_tree
    pipeline = pipeline_tree(points, weights, bst, SPLIT)
    descent = solve_steiner_topology(points, weights, bst, SteinerTopology.for_pairing(SPLIT))
    assert descent.weighted_length == pytest.approx(pipeline.weighted_length, rel=1e-6)
    np.testing.assert_allclose(descent.steiner_positions, pipeline.steiner_positions, atol=1e-4)


def test_best_tree_over_all_pairings(example_tree):
    points, weights, bst = example_tree
    tree = solve_steiner_tetrahedron(points, weights, bst)
    assert tree.weighted_length <= 15.25268 + 1e-4
    assert tree.candidates[-1].method == "fermat"
    assert tree.weighted_length == min(c.weighted_length for c in tree.candidates)


def test_square_steiner_tree():
    square = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    tree = solve_steiner_topology(square, np.ones(4), 1.0, SteinerTopology.caterpillar(4))
    assert tree.weighted_length == pytest.approx(1 + math.sqrt(3), rel=1e-8)
    assert not tree.degenerate


def test_dominant_weight_collapses_to_a_vertex(regular_tetrahedron):
    tree = fermat_tree(regular_tetrahedron, [10.0, 1.0, 1.0, 1.0])
    assert "gauss" in tree.flags
    assert tree.degenerate


def test_parallel_edges(regular_tetrahedron):
    points = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 1.0], [0.0, 1.0, 1.0]])
    with pytest.raises(ParallelEdges):
        simpson_geometry(points, np.ones(4), 1.0)


def test_topology_validation():
    with pytest.raises(DomainError):
        SteinerTopology(4, 2, ((0, 4), (1, 4), (2, 5), (3, 5), (4, 5), (0, 5)))
    edges = SteinerTopology.intermediate_example().edges
    with pytest.raises(DomainError):
        SteinerTopology(6, 3, edges)
    assert SteinerTopology(6, 3, edges, intermediate=True).n_steiner == 3


def test_caterpillar_node_types():
    topology = SteinerTopology.caterpillar(5)
    assert topology.n_steiner == 3
    assert topology.node_types() == [1, 2, 1]


def test_node_weights_to_edge_weight():
    assert bst_from_node_weights(1.0, 2.0) == 1.5


def test_located_nodes_meet_the_weighted_angles(example_tree):
    solution = dihedral_fixed_point(simpson_geometry(*example_tree, SPLIT))
    O12, O34 = locate_nodes(solution)
    A1, A2, A3, A4 = solution.scaffold.points
    b1, b2, b3, b4 = solution.scaffold.weights
    bst = solution.scaffold.bst

    def cos_at(node, p, q):
        u, v = p - node, q - node
        return float(u @ v / (np.linalg.norm(u) * np.linalg.norm(v)))

    assert cos_at(O12, A1, A2) == pytest.approx((bst ** 2 - b1 ** 2 - b2 ** 2) / (2 * b1 * b2), abs=1e-7)
    assert cos_at(O34, A3, A4) == pytest.approx((bst ** 2 - b3 ** 2 - b4 ** 2) / (2 * b3 * b4), abs=1e-7)
    length = sum(b * np.linalg.norm(A - O12) for b, A in ((b1, A1), (b2, A2))) \
        + sum(b * np.linalg.norm(A - O34) for b, A in ((b3, A3), (b4, A4))) + bst * np.linalg.norm(O34 - O12)
    assert length == pytest.approx(15.25268, abs=1e-4)


def _simplex(rng, n_points):
    return rng.normal(size=(n_points, n_points - 1))


@pytest.mark.parametrize("seed", range(5))
def test_caterpillar_in_five_dimensions_is_balanced(seed):
    rng = np.random.default_rng(seed)
    points = _simplex(rng, 6)
    weights = rng.uniform(0.5, 1.5, 6)
    bst = float(rng.uniform(0.5, 1.5))
    topology = SteinerTopology.caterpillar(6)
    tree = solve_steiner_topology(points, weights, bst, topology)
    assert "unbalanced" not in tree.flags
    assert np.max(tree.balance_residuals) <= 1e-8
    for _ in range(20):
        moved = tree.positions.copy()
        moved[6:] += 1e-3 * rng.normal(size=moved[6:].shape)
        assert tree_length(topology, moved, weights, bst) >= tree.weighted_length - 1e-12


def test_heavy_edges_collapse_to_the_fermat_star():
    points = _simplex(np.random.default_rng(11), 6)
    tree = solve_steiner_topology(points, np.ones(6), 3.0, SteinerTopology.caterpillar(6))
    assert "collapsed" in tree.flags
    assert "unbalanced" not in tree.flags
    assert np.max(tree.balance_residuals) <= 1e-8
    assert tree.weighted_length == pytest.approx(weighted_fermat(points, np.ones(6)).objective, rel=1e-9)


@pytest.mark.parametrize("seed", range(3))
def test_intermediate_topology_is_balanced_at_the_high_degree_node(seed):
    rng = np.random.default_rng(100 + seed)
    points = _simplex(rng, 6)
    tree = solve_steiner_topology(points, rng.uniform(0.8, 1.2, 6), 1.0, SteinerTopology.intermediate_example())
    assert "unbalanced" not in tree.flags
    assert np.max(tree.balance_residuals) <= 1e-8


def test_caterpillar_angles_on_a_tetrahedron(example_tree):
    points, weights, bst = example_tree
    tree = solve_steiner_topology(points, weights, bst, SteinerTopology.caterpillar(4))
    assert not tree.degenerate
    A1, A2, A3, A4 = points
    O, O2 = tree.steiner_positions

    def angle_at(node, p, q):
        u, v = p - node, q - node
        return math.acos(float(u @ v / (np.linalg.norm(u) * np.linalg.norm(v))))

    expected = steiner_angles(*weights, bst)
    assert angle_at(O, A1, A2) == pytest.approx(expected.a102, abs=1e-6)
    assert angle_at(O, A2, O2) == pytest.approx(expected.a012, abs=1e-6)
    assert angle_at(O2, A3, A4) == pytest.approx(expected.a304, abs=1e-6)
    assert angle_at(O2, A3, O) == pytest.approx(expected.a340, abs=1e-6)
