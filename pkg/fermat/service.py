"""Weighted Fermat point: the minimizer of sum b_i |X A_i|.

The point is absorbed by vertex A_i exactly when the other weights cannot pull it
away, i.e. |sum_{j != i} b_j u(A_j, A_i)| <= b_i; otherwise it floats and the
weighted unit vectors balance.
"""
from typing import Optional, Sequence, Union

import numpy as np

from core.config import settings
from core.errors import DegenerateInput, DimensionMismatch, MaxIterations
from core.logging import get_logger
from core.utils import as_points, as_weights, unit_vectors_from
from fermat.types import FermatKind, FermatSolution, WeightVector

logger = get_logger(__name__)

_VERTEX_SNAP = 1e-12


def _weights_array(weights: Union[WeightVector, Sequence[float]], count: int) -> np.ndarray:
    if isinstance(weights, WeightVector):
        if len(weights) != count:
            raise DimensionMismatch(f"expected {count} weights, got {len(weights)}")
        return weights.as_array()
    return as_weights(weights, count)


def fermat_objective(points: np.ndarray, weights: np.ndarray, x: np.ndarray) -> float:
    return float(weights @ np.linalg.norm(points - x, axis=1))


def balance_residual(points: np.ndarray, weights: np.ndarray, x: np.ndarray) -> float:
    """|sum b_j u(x, A_j)|, skipping terminals that coincide with x."""
    return float(np.linalg.norm(weights @ unit_vectors_from(x, points)))


def _pull_at_vertex(points: np.ndarray, weights: np.ndarray, i: int) -> np.ndarray:
    mask = np.arange(len(points)) != i
    return weights[mask] @ unit_vectors_from(points[i], points[mask])


def absorbing_test(points, weights, i: int) -> bool:
    """True when vertex i is the weighted Fermat point."""
    pts = as_points(points)
    w = np.asarray(weights, dtype=float)
    return bool(np.linalg.norm(_pull_at_vertex(pts, w, i)) <= w[i])


def _newton_step(points: np.ndarray, weights: np.ndarray, x: np.ndarray) -> Optional[np.ndarray]:
    diff = x - points
    dist = np.linalg.norm(diff, axis=1)
    if np.any(dist <= 0):
        return None
    u = diff / dist[:, None]
    grad = weights @ u
    dim = points.shape[1]
    hess = np.zeros((dim, dim))
    for b, d, v in zip(weights, dist, u):
        hess += (b / d) * (np.eye(dim) - np.outer(v, v))
    try:
        return x - np.linalg.solve(hess, grad)
    except np.linalg.LinAlgError:
        return None


def weighted_fermat(points: np.ndarray, weights: np.ndarray, start: Optional[np.ndarray] = None,
                    tolerance: Optional[float] = None, max_iterations: Optional[int] = None,
                    raise_on_limit: bool = True) -> FermatSolution:
    """Unchecked solver shared by the public entry point and the Steiner descent.

    Coincident terminals are merged; zero weights are ignored.
    """
    tol = settings.fermat_tolerance if tolerance is None else tolerance
    limit = settings.fermat_max_iterations if max_iterations is None else max_iterations
    pts = np.asarray(points, dtype=float)
    w = np.asarray(weights, dtype=float)
    total = float(w.sum())
    scale = float(np.max(np.linalg.norm(pts - pts.mean(axis=0), axis=1))) or 1.0

    # merge coincident terminals so the vertex test sees their combined weight
    merged_pts, merged_w, origin = [], [], []
    for k, (p, b) in enumerate(zip(pts, w)):
        for idx, q in enumerate(merged_pts):
            if np.linalg.norm(p - q) <= 1e-14 * scale:
                merged_w[idx] += b
                break
        else:
            merged_pts.append(p)
            merged_w.append(b)
            origin.append(k)
    mp, mw = np.array(merged_pts), np.array(merged_w)

    for i in range(len(mp)):
        if mw[i] > 0 and np.linalg.norm(_pull_at_vertex(mp, mw, i)) <= mw[i]:
            x = mp[i].copy()
            return FermatSolution(
                point=x, objective=fermat_objective(pts, w, x), kind=FermatKind.ABSORBED,
                iterations=0, gradient_residual=balance_residual(mp, mw, x), vertex=origin[i],
            )

    x = (mw @ mp) / mw.sum() if start is None else np.asarray(start, dtype=float).copy()
    f = fermat_objective(mp, mw, x)
    residual = np.inf
    for iteration in range(1, limit + 1):
        dist = np.linalg.norm(mp - x, axis=1)
        hit = np.flatnonzero(dist <= _VERTEX_SNAP * scale)
        if hit.size:
            # not absorbing: leave the vertex along the descent direction
            pull = _pull_at_vertex(mp, mw, int(hit[0]))
            x = mp[hit[0]] + 1e-6 * scale * pull / np.linalg.norm(pull)
            f = fermat_objective(mp, mw, x)
            continue
        inv = mw / dist
        candidate = (inv @ mp) / inv.sum()
        f_candidate = fermat_objective(mp, mw, candidate)
        newton = _newton_step(mp, mw, x)
        if newton is not None:
            f_newton = fermat_objective(mp, mw, newton)
            if f_newton < f_candidate:
                candidate, f_candidate = newton, f_newton
        x, f = candidate, f_candidate
        residual = balance_residual(mp, mw, x)
        if residual <= tol * total:
            logger.debug("Fermat point converged in %d iterations (residual %.2e)", iteration, residual)
            return FermatSolution(point=x, objective=fermat_objective(pts, w, x), kind=FermatKind.FLOATING,
                                  iterations=iteration, gradient_residual=residual)
    best = FermatSolution(point=x, objective=fermat_objective(pts, w, x), kind=FermatKind.FLOATING,
                          iterations=limit, gradient_residual=residual)
    if raise_on_limit:
        raise MaxIterations(f"Fermat iteration did not converge in {limit} steps", best=best)
    return best


def solve_fermat(points, weights: Union[WeightVector, Sequence[float]], start=None,
                 tolerance: Optional[float] = None,
                 max_iterations: Optional[int] = None) -> FermatSolution:
    """Weighted Fermat point of m >= 3 distinct, not all collinear, points."""
    pts = as_points(points)
    if len(pts) < 3:
        raise DegenerateInput("at least three points are required")
    w = _weights_array(weights, len(pts))
    spread = pts - pts.mean(axis=0)
    scale = float(np.abs(spread).max()) or 1.0
    if np.linalg.matrix_rank(spread / scale, tol=1e-12) < 2:
        raise DegenerateInput("points are collinear")
    diffs = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
    if np.any(diffs[~np.eye(len(pts), dtype=bool)] <= 1e-14 * scale):
        raise DegenerateInput("points must be distinct")
    return weighted_fermat(pts, w, start=start, tolerance=tolerance, max_iterations=max_iterations)


class FermatService:

    def solve(self, points, weights) -> FermatSolution:
        return solve_fermat(points, weights)

    def vertex_objectives(self, points, weights) -> list:
        pts = as_points(points)
        w = np.asarray(weights, dtype=float)
        return [fermat_objective(pts, w, p) for p in pts]


fermat_service = FermatService()
