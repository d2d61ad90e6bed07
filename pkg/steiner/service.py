from typing import List, Optional, Sequence

import numpy as np

from core.config import settings
from core.errors import DimensionMismatch, MultitreeError
from core.logging import get_logger
from fermat.service import weighted_fermat
from steiner.dihedral import dihedral_fixed_point, existence_check, simpson_geometry, with_nodes
from steiner.topology import balance_residuals, solve_steiner_topology, tree_length
from steiner.types import PAIRINGS, Pairing, SteinerTopology, SteinerTree

logger = get_logger(__name__)


# worked example: tetrahedron with unequal weights and bST = 1
EXAMPLE_VERTICES = ((2.0, 0.0, 0.0), (6.86, 1.37, 0.0), (0.0, 0.0, 5.0), (0.0, 6.0, 5.0))
EXAMPLE_WEIGHTS = (0.85, 0.88, 0.83, 1.08)
EXAMPLE_BST = 1.0


def bst_from_node_weights(b0: float, b0_prime: float) -> float:
    """Single Steiner-edge weight equivalent to node weights b0 and b0'."""
    return 0.5 * (b0 + b0_prime)


def _points(simplex) -> np.ndarray:
    pts = np.asarray(getattr(simplex, "vertices", simplex), dtype=float)
    if pts.shape != (4, 3):
        raise DimensionMismatch("a tetrahedron needs four vertices in R^3")
    return pts


def fermat_tree(points, weights) -> SteinerTree:
    """Star through the weighted Fermat point: the fully collapsed candidate."""
    pts = np.asarray(points, dtype=float)
    w = np.asarray(weights, dtype=float)
    n = len(pts)
    topology = SteinerTopology(n, 1, tuple((t, n) for t in range(n)), intermediate=n > 3)
    sol = weighted_fermat(pts, w, raise_on_limit=False)
    positions = np.vstack([pts, sol.point])
    flags = ("fermat", "gauss") if not sol.is_floating else ("fermat",)
    return SteinerTree(
        topology=topology, positions=positions, weighted_length=tree_length(topology, positions, w, 0.0),
        balance_residuals=balance_residuals(topology, positions, w, 0.0), flags=flags, method="fermat",
    )


def pipeline_tree(points, weights, bst: float, pairing: Pairing) -> SteinerTree:
    """Two-node tree from the Simpson line construction; raises when it does not apply."""
    pts = np.asarray(points, dtype=float)
    w = np.asarray(weights, dtype=float)
    scaffold = simpson_geometry(pts, w, bst, pairing)
    solution = with_nodes(dihedral_fixed_point(scaffold))
    if "nodes-outside-segment" in solution.diagnostics:
        raise MultitreeError("Steiner nodes fall outside the Simpson segment")
    topology = SteinerTopology.for_pairing(pairing)
    positions = np.vstack([pts, solution.O12, solution.O34])
    residuals = balance_residuals(topology, positions, w, bst)
    if np.max(residuals) > settings.balance_tolerance * max(float(w.max()), bst):
        raise MultitreeError(f"Simpson nodes are not balanced (residual {np.max(residuals):.2e})")
    return SteinerTree(
        topology=topology, positions=positions, weighted_length=tree_length(topology, positions, w, bst),
        balance_residuals=residuals, method="simpson", pairing=pairing, dihedral=solution,
        flags=tuple(d for d in solution.diagnostics if d == "phi-below-45"),
    )


def pairing_tree(points, weights, bst: float, pairing: Pairing) -> SteinerTree:
    pts = np.asarray(points, dtype=float)
    if existence_check(pts, weights, bst, pairing):
        try:
            return pipeline_tree(pts, weights, bst, pairing)
        except MultitreeError as exc:
            logger.info("Simpson construction failed for pairing %s: %s", pairing, exc)
    tree = solve_steiner_topology(pts, weights, bst, SteinerTopology.for_pairing(pairing))
    return SteinerTree(
        topology=tree.topology, positions=tree.positions, weighted_length=tree.weighted_length,
        balance_residuals=tree.balance_residuals, flags=tree.flags, method="descent", pairing=pairing,
    )


def solve_steiner_tetrahedron(simplex, weights, bst: float) -> SteinerTree:
    """Best of the three two-node pairings and the Fermat tree, with all candidates attached."""
    pts = _points(simplex)
    w = np.asarray(weights, dtype=float)
    candidates: List[SteinerTree] = []
    for pairing in PAIRINGS:
        try:
            candidates.append(pairing_tree(pts, w, bst, pairing))
        except MultitreeError as exc:
            logger.info("pairing %s has no candidate: %s", pairing, exc)
    candidates.append(fermat_tree(pts, w))
    best = min(candidates, key=lambda t: t.weighted_length)
    return SteinerTree(
        topology=best.topology, positions=best.positions, weighted_length=best.weighted_length,
        balance_residuals=best.balance_residuals, flags=best.flags, method=best.method,
        pairing=best.pairing, dihedral=best.dihedral, candidates=tuple(candidates),
    )


class SteinerService:

    def tetrahedron(self, vertices, weights, bst: float) -> SteinerTree:
        return solve_steiner_tetrahedron(vertices, weights, bst)

    def topology(self, points, weights, bst: float, n_steiner: int, edges: Sequence[Sequence[int]],
                 intermediate: bool = False, start: Optional[np.ndarray] = None) -> SteinerTree:
        topo = SteinerTopology(len(points), n_steiner, tuple(tuple(e) for e in edges), intermediate)
        return solve_steiner_topology(points, weights, bst, topo, start=start)


steiner_service = SteinerService()
