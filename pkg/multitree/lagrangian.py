"""Lagrange multiplier check for a two-node tree on a tetrahedron.

The variables are the node distances a10, a20, a30 (node O next to A1A2) and
a20', a30', a40' (node O' next to A3A4), plus the auxiliary Fermat weights of
each node. Constraints f1..f6 tie those weights to the volume equalities. f7
compares |OO'| measured in the plane of A1, A2, O with |OO'| measured in the
plane of A3, A4, O'; both agree only when each node is coplanar with its
terminal edges and the Steiner edge.
"""
import math
from typing import Optional, Tuple

import numpy as np

from core.errors import DegenerateTree, DimensionMismatch, IllConditioned
from core.logging import get_logger
from geometry.service import coordinate_volume
from inverse_fermat.service import replaced_volumes
from multitree.types import LagrangianSystem
from steiner.types import SteinerTree

logger = get_logger(__name__)

VARIABLES = (
    "a10", "a20", "a30", "a20'", "a30'", "a40'",
    "B10", "B20", "B30", "B20'", "B30'", "B40'",
)

_MAX_CONDITION = 1e12


def _trilaterate(anchors: np.ndarray, radii, side: float) -> np.ndarray:
    """Point at the given distances from three anchors, on the `side` of their plane."""
    p1, p2, p3 = anchors
    r1, r2, r3 = radii
    d = float(np.linalg.norm(p2 - p1))
    ex = (p2 - p1) / d
    i = float(ex @ (p3 - p1))
    ey = p3 - p1 - i * ex
    j = float(np.linalg.norm(ey))
    ey = ey / j
    ez = np.cross(ex, ey)
    x = (r1 ** 2 - r2 ** 2 + d ** 2) / (2 * d)
    y = (r1 ** 2 - r3 ** 2 + i ** 2 + j ** 2) / (2 * j) - i * x / j
    z = side * np.sqrt(max(r1 ** 2 - x ** 2 - y ** 2, 0.0))
    return p1 + x * ex + y * ey + z * ez


def _side(anchors: np.ndarray, point: np.ndarray) -> float:
    p1, p2, p3 = anchors
    n = np.cross(p2 - p1, p3 - p1)
    return 1.0 if float(n @ (point - p1)) >= 0 else -1.0


def _offset(base: np.ndarray, point: np.ndarray) -> np.ndarray:
    """Component of `point - base[0]` perpendicular to the line through `base`."""
    axis = (base[1] - base[0]) / np.linalg.norm(base[1] - base[0])
    rel = point - base[0]
    return rel - (rel @ axis) * axis


def _planar_gap(base: float, r1: float, r2: float, s1: float, s2: float, side: float) -> float:
    """Distance of two points placed by the cosine law in one plane through an edge of length `base`.

    The first point is at (r1, r2) from the edge ends, the second at (s1, s2);
    `side` is +1 when both lie on the same side of the edge.
    """
    x = (r1 ** 2 - r2 ** 2 + base ** 2) / (2 * base)
    y = math.sqrt(max(r1 ** 2 - x ** 2, 0.0))
    x2 = (s1 ** 2 - s2 ** 2 + base ** 2) / (2 * base)
    y2 = side * math.sqrt(max(s1 ** 2 - x2 ** 2, 0.0))
    return math.hypot(x - x2, y - y2)


class _TwoNodeProblem:
    """Terminals ordered so that O joins A1, A2 and O' joins A3, A4."""

    def __init__(self, points: np.ndarray, weights: np.ndarray, bst: float, O: np.ndarray, O2: np.ndarray):
        self.A = points
        self.b = weights
        self.bst = bst
        self.a12 = float(np.linalg.norm(points[1] - points[0]))
        self.a34 = float(np.linalg.norm(points[3] - points[2]))
        self.side_O = _side(points[[0, 1, 2]], O)
        self.side_O2 = _side(points[[1, 2, 3]], O2)
        self.side12 = 1.0 if _offset(points[[0, 1]], O) @ _offset(points[[0, 1]], O2) >= 0 else -1.0
        self.side34 = 1.0 if _offset(points[[2, 3]], O2) @ _offset(points[[2, 3]], O) >= 0 else -1.0

    def nodes(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        A = self.A
        O = _trilaterate(A[[0, 1, 2]], x[0:3], self.side_O)
        O2 = _trilaterate(A[[1, 2, 3]], x[3:6], self.side_O2)
        return O, O2

    def objective(self, x: np.ndarray) -> float:
        O, O2 = self.nodes(x)
        b1, b2, b3, b4 = self.b
        return float(b1 * x[0] + b2 * x[1] + b3 * x[4] + b4 * x[5] + self.bst * np.linalg.norm(O - O2))

    def constraints(self, x: np.ndarray) -> np.ndarray:
        A = self.A
        O, O2 = self.nodes(x)
        a10, a20, a30, a20p, a30p, a40p = x[:6]
        B10, B20, B30, B20p, B30p, B40p = x[6:]
        a40 = float(np.linalg.norm(O - A[3]))
        a10p = float(np.linalg.norm(O2 - A[0]))

        def vol(node, i, j, k):
            return coordinate_volume(np.vstack([node, A[i], A[j], A[k]]))

        with np.errstate(divide="ignore", invalid="ignore"):
            rest = np.float64(1.0 - B10 - B20 - B30) / (a40 * vol(O, 0, 1, 2))
            rest_p = np.float64(1.0 - B20p - B30p - B40p) / (a10p * vol(O2, 1, 2, 3))
            return np.array([
                np.float64(B10) / (a10 * vol(O, 1, 2, 3)) - rest,
                np.float64(B20) / (a20 * vol(O, 0, 2, 3)) - rest,
                np.float64(B30) / (a30 * vol(O, 0, 1, 3)) - rest,
                np.float64(B40p) / (a40p * vol(O2, 0, 1, 2)) - rest_p,
                np.float64(B20p) / (a20p * vol(O2, 0, 2, 3)) - rest_p,
                np.float64(B30p) / (a30p * vol(O2, 0, 1, 3)) - rest_p,
                _planar_gap(self.a12, a10, a20, a10p, a20p, self.side12)
                - _planar_gap(self.a34, a30p, a40p, a30, a40, self.side34),
            ])


def _central_gradient(f, x: np.ndarray, steps: np.ndarray) -> np.ndarray:
    cols = []
    for k in range(len(x)):
        e = np.zeros_like(x)
        e[k] = steps[k]
        cols.append((np.asarray(f(x + e)) - np.asarray(f(x - e))) / (2 * steps[k]))
    return np.array(cols).T


def _ordered(tree: SteinerTree, points: np.ndarray, weights: np.ndarray):
    if tree.pairing is None or tree.topology.n_steiner != 2 or "gauss" in tree.flags or "collapsed" in tree.flags:
        raise DegenerateTree("the multiplier check needs a non-degenerate two-node tree")
    (i, j), (k, l) = tree.pairing
    order = [i, j, k, l]
    O, O2 = tree.positions[4], tree.positions[5]
    return points[order], weights[order], O, O2


def lagrangian_variables(points, weights, tree: SteinerTree) -> np.ndarray:
    """Variable vector at a solved tree; the auxiliary weights come from the volume equalities."""
    pts, _, O, O2 = _ordered(tree, np.asarray(points, dtype=float), np.asarray(weights, dtype=float))
    a = np.linalg.norm(pts - O, axis=1)
    a2 = np.linalg.norm(pts - O2, axis=1)
    B = a * replaced_volumes(pts, O)
    B = B / B.sum()
    B2 = a2 * replaced_volumes(pts, O2)
    B2 = B2 / B2.sum()
    return np.array([a[0], a[1], a[2], a2[1], a2[2], a2[3], B[0], B[1], B[2], B2[1], B2[2], B2[3]])


def lagrangian_residual(points, weights, bst: float, tree: SteinerTree,
                        variables: Optional[np.ndarray] = None) -> LagrangianSystem:
    """Constraint residuals and least-squares multipliers with the objective multiplier fixed to 1.

    `variables` overrides the point of evaluation; by default it is the solved tree.
    Points where a node volume vanishes report an infinite stationarity residual.
    """
    pts_in = np.asarray(points, dtype=float)
    w_in = np.asarray(weights, dtype=float)
    if pts_in.shape != (4, 3) or w_in.shape != (4,):
        raise DimensionMismatch("the multiplier check is defined for tetrahedra")
    pts, w, O, O2 = _ordered(tree, pts_in, w_in)
    problem = _TwoNodeProblem(pts, w, bst, O, O2)
    x = lagrangian_variables(pts_in, w_in, tree) if variables is None else np.asarray(variables, dtype=float)
    if x.shape != (len(VARIABLES),):
        raise DimensionMismatch(f"expected {len(VARIABLES)} variables")

    scale = np.where(np.arange(len(x)) < 6, float(np.max(x[:6])), 1.0)
    steps = 1e-6 * scale
    grad_f0 = _central_gradient(problem.objective, x, steps)
    jac = _central_gradient(problem.constraints, x, steps)
    constraints = problem.constraints(x)
    gradient_scale = float(np.linalg.norm(np.append(w, bst)))
    if not (np.all(np.isfinite(jac)) and np.all(np.isfinite(constraints))):
        logger.info("variables leave the region where the node volumes are positive")
        return LagrangianSystem(
            names=VARIABLES, variables=x, objective=problem.objective(x), constraints=constraints,
            multipliers=np.concatenate([[1.0], np.full(len(constraints), np.nan)]), gradient=grad_f0,
            stationarity_residual=math.inf, gradient_scale=gradient_scale, condition_number=math.inf,
        )

    row_norms = np.linalg.norm(jac, axis=1)
    keep = np.flatnonzero(row_norms > 1e-6 * row_norms.max())
    dropped = tuple(int(k) for k in np.setdiff1d(np.arange(len(row_norms)), keep))
    J = jac[keep]
    condition = float(np.linalg.cond(J / row_norms[keep, None]))
    if not np.isfinite(condition) or condition > _MAX_CONDITION:
        raise IllConditioned("constraint gradients are nearly dependent", condition_number=condition)
    lam_kept, *_ = np.linalg.lstsq(J.T, -grad_f0, rcond=None)
    lam = np.zeros(len(row_norms))
    lam[keep] = lam_kept
    gradient = grad_f0 + jac.T @ lam
    residual = float(np.linalg.norm(gradient))
    logger.debug("stationarity residual %.3e (dropped rows %s)", residual, dropped)
    return LagrangianSystem(
        names=VARIABLES, variables=x, objective=problem.objective(x), constraints=constraints,
        multipliers=np.concatenate([[1.0], lam]), gradient=gradient, stationarity_residual=residual,
        gradient_scale=gradient_scale, condition_number=condition,
        dropped=dropped,
    )
