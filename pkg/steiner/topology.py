"""Weighted Steiner trees for a fixed topology in any dimension.

Mobile nodes are relaxed one at a time as weighted Fermat points of their
neighbours; Newton steps on a smoothed length then finish all nodes together,
collapsed edges included. Trees still out of balance carry the "unbalanced" flag.
"""
from typing import Optional

import networkx as nx
import numpy as np

from core.config import settings
from core.errors import BadWeights, DimensionMismatch, MaxIterations
from core.logging import get_logger
from fermat.service import weighted_fermat
from steiner.types import SteinerTopology, SteinerTree

logger = get_logger(__name__)

_COLLAPSE = 1e-10
_SMOOTHING = 1e-13


def edge_weights(topology: SteinerTopology, weights, bst: float) -> np.ndarray:
    return np.array([topology.edge_weight(e, weights, bst) for e in topology.edges])


def tree_length(topology: SteinerTopology, positions: np.ndarray, weights, bst: float) -> float:
    w = edge_weights(topology, weights, bst)
    ends = np.array(topology.edges)
    return float(w @ np.linalg.norm(positions[ends[:, 0]] - positions[ends[:, 1]], axis=1))


def balance_residuals(topology: SteinerTopology, positions: np.ndarray, weights, bst: float) -> np.ndarray:
    """Per Steiner node: how far the weighted unit-vector sum exceeds the slack of collapsed edges.

    Edges of zero length contribute their weight as allowed imbalance, so a node
    merged with a neighbour is balanced when the pull of the others stays below it.
    """
    scale = float(np.ptp(positions[:topology.n_terminals], axis=0).max()) or 1.0
    out = []
    for s in topology.steiner_nodes:
        pull = np.zeros(positions.shape[1])
        slack = 0.0
        for v in topology.neighbors(s):
            w = topology.edge_weight((min(s, v), max(s, v)), weights, bst)
            d = positions[v] - positions[s]
            dist = float(np.linalg.norm(d))
            if dist <= _COLLAPSE * scale:
                slack += w
            else:
                pull += w * d / dist
        out.append(max(0.0, float(np.linalg.norm(pull)) - slack))
    return np.array(out)


def _initial_positions(topology: SteinerTopology, terminals: np.ndarray) -> np.ndarray:
    positions = np.vstack([terminals, np.zeros((topology.n_steiner, terminals.shape[1]))])
    centroid = terminals.mean(axis=0)
    g = topology.graph()
    for s in topology.steiner_nodes:
        near = [v for v in g.neighbors(s) if topology.is_terminal(v)]
        anchor = terminals[near].mean(axis=0) if near else centroid
        positions[s] = 0.5 * (anchor + centroid)
    return positions


def _smoothed_terms(topology: SteinerTopology, x: np.ndarray, w_edges: np.ndarray, eps: float):
    """Length, gradient and Hessian of sum w*sqrt(|d|^2 + eps^2) over the Steiner coordinates."""
    n_t = topology.n_terminals
    dim = x.shape[1]
    s = topology.n_steiner
    grad = np.zeros((s, dim))
    hess = np.zeros((s * dim, s * dim))
    value = 0.0
    for (a, b), w in zip(topology.edges, w_edges):
        d = x[a] - x[b]
        r = float(np.sqrt(d @ d + eps * eps))
        value += w * r
        g = w * d / r
        K = (w / r) * (np.eye(dim) - np.outer(d, d) / (r * r))
        for node, sign in ((a, 1.0), (b, -1.0)):
            if node >= n_t:
                i = node - n_t
                grad[i] += sign * g
                hess[i * dim:(i + 1) * dim, i * dim:(i + 1) * dim] += K
        if a >= n_t and b >= n_t:
            i, j = a - n_t, b - n_t
            hess[i * dim:(i + 1) * dim, j * dim:(j + 1) * dim] -= K
            hess[j * dim:(j + 1) * dim, i * dim:(i + 1) * dim] -= K
    return value, grad.ravel(), hess


def _smoothed_polish(topology: SteinerTopology, positions: np.ndarray, weights, bst: float,
                     scale: float) -> np.ndarray:
    """Newton steps on a smoothed length while the smoothing shrinks to `_SMOOTHING * scale`.

    The smoothed length is strictly convex, so edges may collapse without
    stalling the iteration; collapsed edges end up shorter than the collapse
    threshold used by `balance_residuals`.
    """
    n_t = topology.n_terminals
    dim = positions.shape[1]
    w_edges = edge_weights(topology, weights, bst)
    x = positions.copy()
    eps = 1e-3 * scale
    while True:
        for _ in range(100):
            value, grad, hess = _smoothed_terms(topology, x, w_edges, eps)
            if np.linalg.norm(grad) <= 1e-14 * float(w_edges.sum()):
                break
            try:
                step = -np.linalg.solve(hess, grad)
            except np.linalg.LinAlgError:
                break
            slope = float(grad @ step)
            t = 1.0
            while t > 1e-12:
                trial = x.copy()
                trial[n_t:] += t * step.reshape(-1, dim)
                if _smoothed_terms(topology, trial, w_edges, eps)[0] <= value + 1e-4 * t * slope:
                    break
                t *= 0.5
            else:
                break
            x = trial
            if t * np.linalg.norm(step) <= 1e-15 * scale:
                break
        if eps <= _SMOOTHING * scale:
            return x
        eps = max(eps * 1e-2, _SMOOTHING * scale)


def _move_clusters(topology: SteinerTopology, positions: np.ndarray, weights, bst: float,
                   scale: float) -> None:
    """Relax groups of merged Steiner nodes together; single nodes stall once merged."""
    g = topology.graph()
    merged = g.edge_subgraph(
        (a, b) for a, b in topology.edges
        if not topology.is_terminal(a) and not topology.is_terminal(b)
        and np.linalg.norm(positions[a] - positions[b]) <= _COLLAPSE * scale
    )
    for cluster in nx.connected_components(merged):
        outside, out_w = [], []
        for s in cluster:
            for v in g.neighbors(s):
                if v not in cluster:
                    outside.append(v)
                    out_w.append(topology.edge_weight((min(s, v), max(s, v)), weights, bst))
        members = sorted(cluster)
        sol = weighted_fermat(positions[outside], np.array(out_w), start=positions[members[0]],
                              tolerance=1e-14, max_iterations=500, raise_on_limit=False)
        trial = positions.copy()
        trial[members] = sol.point
        if tree_length(topology, trial, weights, bst) < tree_length(topology, positions, weights, bst):
            positions[members] = sol.point


def _flags(topology: SteinerTopology, positions: np.ndarray, scale: float) -> tuple:
    flags = []
    steiner = positions[topology.n_terminals:]
    terminals = positions[:topology.n_terminals]
    if topology.n_steiner and np.min(np.linalg.norm(steiner[:, None] - terminals[None], axis=-1)) <= 1e-8 * scale:
        flags.append("gauss")
    if topology.n_steiner > 1:
        gaps = np.linalg.norm(steiner[:, None] - steiner[None], axis=-1)
        if np.min(gaps[~np.eye(len(steiner), dtype=bool)]) <= 1e-8 * scale:
            flags.append("collapsed")
    return tuple(flags)


def solve_steiner_topology(points, weights, bst: float, topology: SteinerTopology,
                           start: Optional[np.ndarray] = None, tolerance: Optional[float] = None,
                           max_sweeps: Optional[int] = None) -> SteinerTree:
    """Minimum weighted length tree with the given topology."""
    terminals = np.asarray(points, dtype=float)
    w = np.asarray(weights, dtype=float)
    if terminals.ndim != 2 or len(terminals) != topology.n_terminals:
        raise DimensionMismatch("one point per terminal of the topology is required")
    if w.shape != (topology.n_terminals,):
        raise DimensionMismatch("one weight per terminal is required")
    if np.any(w <= 0) or bst <= 0:
        raise BadWeights("weights must be positive")

    tol = settings.descent_tolerance if tolerance is None else tolerance
    limit = settings.descent_max_sweeps if max_sweeps is None else max_sweeps
    scale = float(np.ptp(terminals, axis=0).max()) or 1.0
    if start is None:
        positions = _initial_positions(topology, terminals)
    else:
        positions = np.vstack([terminals, np.asarray(start, dtype=float)])

    length = tree_length(topology, positions, w, bst)
    if topology.n_steiner:
        neighbours = {s: topology.neighbors(s) for s in topology.steiner_nodes}
        for sweep in range(1, limit + 1):
            for s in topology.steiner_nodes:
                nbrs = neighbours[s]
                nbr_w = [topology.edge_weight((min(s, v), max(s, v)), w, bst) for v in nbrs]
                sol = weighted_fermat(positions[nbrs], np.array(nbr_w), start=positions[s],
                                      tolerance=1e-14, max_iterations=500, raise_on_limit=False)
                positions[s] = sol.point
            _move_clusters(topology, positions, w, bst, scale)
            new_length = tree_length(topology, positions, w, bst)
            if length - new_length <= tol * new_length:
                length = new_length
                break
            length = new_length
        else:
            best = SteinerTree(topology=topology, positions=positions, weighted_length=length,
                               balance_residuals=balance_residuals(topology, positions, w, bst))
            raise MaxIterations(f"descent did not settle in {limit} sweeps", best=best)
        logger.debug("descent finished after %d sweeps, length %.12g", sweep, length)
        polished = _smoothed_polish(topology, positions, w, bst, scale)
        polished_length = tree_length(topology, polished, w, bst)
        if polished_length <= length * (1 + 1e-12):
            positions, length = polished, polished_length

    residuals = balance_residuals(topology, positions, w, bst)
    flags = _flags(topology, positions, scale)
    if residuals.size and np.max(residuals) > settings.balance_tolerance * max(float(w.max()), bst):
        logger.warning("Steiner node left unbalanced: residual %.2e", np.max(residuals))
        flags += ("unbalanced",)
    return SteinerTree(
        topology=topology, positions=positions, weighted_length=length,
        balance_residuals=residuals, flags=flags, method="descent",
    )
