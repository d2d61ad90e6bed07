"""Simpson line construction for two-node weighted Steiner trees on a tetrahedron.

The terminals are split into the edges A1A2 and A3A4. Rotating the weighted third
vertex of each edge about that edge by delta12 and delta34 gives two points whose
joining line (the Simpson line) carries the Steiner edge. Both rotation angles
come from a coupled pair of cotangent equations solved by damped iteration.
"""
import math
from dataclasses import replace
from typing import NamedTuple, Optional, Tuple

import numpy as np

from core.config import settings
from core.errors import (BadWeights, Degenerate, DegenerateTree, DimensionMismatch, NoConvergence, ParallelEdges,
                         WeightsInfeasible)
from core.logging import get_logger
from core.utils import clamp_cos
from steiner.types import Pairing, SimpsonScaffold, DihedralSolution

logger = get_logger(__name__)


def _tetrahedron(points, weights) -> Tuple[np.ndarray, np.ndarray]:
    pts = np.asarray(points, dtype=float)
    w = np.asarray(weights, dtype=float)
    if pts.shape != (4, 3):
        raise DimensionMismatch("a tetrahedron needs four points in R^3")
    if w.shape != (4,):
        raise DimensionMismatch("one weight per terminal is required")
    if np.any(w <= 0):
        raise BadWeights("terminal weights must be positive")
    return pts, w


def node_angle(b1: float, b2: float, bst: float) -> float:
    """Angle at a Steiner node between its terminal edges of weights b1 and b2.

    Raises WeightsInfeasible when b1, b2, bst fail the strict triangle inequality.
    """
    if min(b1, b2, bst) <= 0:
        raise BadWeights("weights must be positive")
    if not (b1 + b2 > bst and b1 + bst > b2 and b2 + bst > b1):
        raise WeightsInfeasible(f"weights ({b1}, {b2}, {bst}) violate the triangle inequality")
    return math.acos(clamp_cos((bst ** 2 - b1 ** 2 - b2 ** 2) / (2.0 * b1 * b2)))


class NodeAngles(NamedTuple):
    a102: float
    a012: float
    a304: float
    a340: float


def steiner_angles(b1: float, b2: float, b3: float, b4: float, bst: float) -> NodeAngles:
    """Angles at the two nodes fixed by the weights alone.

    a102 and a304 lie between the terminal edges; a012 between A2 and the Steiner
    edge, a340 between A3 and the Steiner edge.
    """
    a102 = node_angle(b1, b2, bst)
    a304 = node_angle(b3, b4, bst)
    a012 = math.acos(clamp_cos((b1 ** 2 - b2 ** 2 - bst ** 2) / (2.0 * b2 * bst)))
    a340 = math.acos(clamp_cos((b4 ** 2 - b3 ** 2 - bst ** 2) / (2.0 * b3 * bst)))
    return NodeAngles(a102, a012, a304, a340)


def _side_condition(ap: np.ndarray, aq: np.ndarray, center: np.ndarray, bp: float, bq: float,
                    bst: float) -> bool:
    a = float(np.linalg.norm(aq - ap))
    axis = (aq - ap) / a
    rel = center - ap
    xc = float(rel @ axis)
    rho = float(np.linalg.norm(rel - xc * axis))
    alpha = node_angle(bp, bq, bst)
    tan_alpha = math.tan(alpha)
    ineq_a = True if xc == 0 else rho / abs(xc) > tan_alpha
    P = (bp + bq + bst) * (bp + bq - bst) * (bq + bst - bp) * (bp + bst - bq)
    r = a * bp * bq / math.sqrt(P)
    beta = math.acos(clamp_cos(a / (2.0 * r)))
    ineq_b = (rho + r * math.sin(beta)) ** 2 + (a / 2.0 - xc) ** 2 > r ** 2
    return ineq_a and ineq_b


def existence_check(points, weights, bst: float, pairing: Pairing = ((0, 1), (2, 3))) -> bool:
    """Sufficient condition for a full two-node tree with the given edge split.

    Each side tests the weighted centre of the opposite edge against the arc of
    points seeing its own edge under the node angle.
    """
    pts, w = _tetrahedron(points, weights)
    (i, j), (k, l) = pairing
    try:
        node_angle(w[i], w[j], bst)
        node_angle(w[k], w[l], bst)
    except WeightsInfeasible:
        return False
    c12 = (w[k] * pts[k] + w[l] * pts[l]) / (w[k] + w[l])
    c34 = (w[i] * pts[i] + w[j] * pts[j]) / (w[i] + w[j])
    side12 = _side_condition(pts[i], pts[j], c12, w[i], w[j], bst)
    side34 = _side_condition(pts[l], pts[k], c34, w[l], w[k], bst)
    return side12 and side34


def simpson_geometry(points, weights, bst: float, pairing: Pairing = ((0, 1), (2, 3))) -> SimpsonScaffold:
    """Frame and fixed lengths of the construction.

    A1 and A2 are swapped when needed so that the angle phi between A1A2 and A4A3
    is acute.
    """
    pts, w = _tetrahedron(points, weights)
    (i, j), (k, l) = pairing
    A1, A2, A3, A4 = pts[i], pts[j], pts[k], pts[l]
    b1, b2, b3, b4 = w[i], w[j], w[k], w[l]
    swapped = False
    if (A2 - A1) @ (A3 - A4) < 0:
        A1, A2, b1, b2 = A2, A1, b2, b1
        swapped = True
    node_angle(b1, b2, bst)
    node_angle(b3, b4, bst)

    a12 = float(np.linalg.norm(A2 - A1))
    a34 = float(np.linalg.norm(A3 - A4))
    if a12 <= 0 or a34 <= 0:
        raise Degenerate("edge of zero length")
    u = (A2 - A1) / a12
    w34 = (A3 - A4) / a34
    c = float(u @ w34)
    sin_phi = math.sqrt(max(0.0, 1.0 - c * c))
    if sin_phi <= 1e-9:
        raise ParallelEdges("the two edges are parallel")

    r0 = A1 - A4
    d1, e1 = float(u @ r0), float(w34 @ r0)
    p = (c * e1 - d1) / (1.0 - c * c)
    q = (e1 - c * d1) / (1.0 - c * c)
    M12 = A1 + p * u
    M34 = A4 + q * w34
    H = float(np.linalg.norm(M34 - M12))
    if H <= 1e-12 * max(a12, a34):
        raise Degenerate("the two edges intersect")
    ez = (M34 - M12) / H
    y = np.cross(ez, u)
    if y @ w34 < 0:
        y = -y
    basis = np.vstack([u, y, ez])

    s1 = float((A1 - M12) @ u)
    s4 = float((A4 - M34) @ w34)
    ct1 = clamp_cos((bst ** 2 + b2 ** 2 - b1 ** 2) / (2.0 * b2 * bst))
    ct4 = clamp_cos((bst ** 2 + b3 ** 2 - b4 ** 2) / (2.0 * b3 * bst))
    A1H12 = a12 * (b2 / bst) * ct1
    h12 = a12 * (b2 / bst) * math.sqrt(1.0 - ct1 * ct1)
    A4H34 = a34 * (b3 / bst) * ct4
    h34 = a34 * (b3 / bst) * math.sqrt(1.0 - ct4 * ct4)

    diagnostics = ()
    if c > math.sqrt(0.5):
        # outside 45 < phi < 90 the construction is used best-effort
        diagnostics = ("phi-below-45",)
    ordered = np.vstack([A1, A2, A3, A4])
    return SimpsonScaffold(
        points=ordered, weights=np.array([b1, b2, b3, b4]), bst=float(bst), pairing=pairing,
        swapped=swapped, origin=M12, basis=basis, H=H, phi=math.atan2(sin_phi, c),
        M12=M12, M34=M34, s1=s1, s4=s4, h12=h12, h34=h34, A1H12=A1H12, A4H34=A4H34,
        s12=s1 + A1H12, s34=s4 + A4H34, diagnostics=diagnostics,
    )


def _cot_to_angle(x: float) -> float:
    return math.atan2(1.0, x)


def _cot34(sc: SimpsonScaffold, x: float) -> float:
    """cot(delta34) implied by cot(delta12) = x."""
    s_phi, c = math.sin(sc.phi), math.cos(sc.phi)
    cos_d, sin_d = x / math.sqrt(1 + x * x), 1 / math.sqrt(1 + x * x)
    return (sc.s12 * s_phi + sc.h12 * cos_d * c) / (sc.H + sc.h12 * sin_d)


def _cot12(sc: SimpsonScaffold, y: float) -> float:
    s_phi, c = math.sin(sc.phi), math.cos(sc.phi)
    cos_d, sin_d = y / math.sqrt(1 + y * y), 1 / math.sqrt(1 + y * y)
    return (sc.s34 * s_phi + sc.h34 * cos_d * c) / (sc.H + sc.h34 * sin_d)


def third_vertices(sc: SimpsonScaffold, delta12: float, delta34: float) -> Tuple[np.ndarray, np.ndarray]:
    """Rotated weighted third vertices A12 and A34 in the local frame."""
    s_phi, c = math.sin(sc.phi), math.cos(sc.phi)
    A12 = np.array([sc.s12, -sc.h12 * math.cos(delta12), -sc.h12 * math.sin(delta12)])
    A34 = np.array([
        sc.s34 * c - sc.h34 * math.cos(delta34) * s_phi,
        sc.s34 * s_phi + sc.h34 * math.cos(delta34) * c,
        sc.H + sc.h34 * math.sin(delta34),
    ])
    return A12, A34


def dihedral_fixed_point(scaffold: SimpsonScaffold, x0: Optional[float] = None,
                         tolerance: Optional[float] = None,
                         max_iterations: Optional[int] = None) -> DihedralSolution:
    """Solve the coupled cotangent equations for delta12 and delta34.

    Picard iteration on x = cot(delta12) with damping 0.5; the damping halves
    whenever the update grows.
    """
    tol = settings.fixed_point_tolerance if tolerance is None else tolerance
    limit = settings.fixed_point_max_iterations if max_iterations is None else max_iterations
    x = 1.0 / math.sqrt(3.0) if x0 is None else float(x0)
    lam = 0.5
    diagnostics = []
    previous = math.inf
    iteration = 0
    converged = False
    for iteration in range(1, limit + 1):
        target = _cot12(scaffold, _cot34(scaffold, x))
        step = target - x
        if not math.isfinite(target):
            raise NoConvergence("fixed point iteration left the finite range")
        if abs(step) > previous:
            lam *= 0.5
            if "non-contraction" not in diagnostics:
                diagnostics.append("non-contraction")
            if lam < 1e-12:
                break
        previous = abs(step)
        x += lam * step
        if abs(step) <= tol * max(1.0, abs(x)):
            converged = True
            break
    if not converged:
        raise NoConvergence(f"dihedral angles did not settle in {iteration} iterations")

    y = _cot34(scaffold, x)
    residual = abs(_cot12(scaffold, y) - x)
    delta12, delta34 = _cot_to_angle(x), _cot_to_angle(y)
    A12, A34 = third_vertices(scaffold, delta12, delta34)
    d = A34 - A12
    alpha = math.atan2(d[2], math.hypot(d[0], d[1]))
    T12 = A12 + (-A12[2] / d[2]) * d
    T34 = A12 + ((scaffold.H - A12[2]) / d[2]) * d
    logger.debug("dihedral angles %.6f, %.6f after %d iterations", delta12, delta34, iteration)
    return DihedralSolution(
        scaffold=scaffold, delta12=delta12, delta34=delta34, alpha=alpha, iterations=iteration,
        residual=residual, T12_local=T12, T34_local=T34, A12_local=A12, A34_local=A34,
        diagnostics=tuple(diagnostics),
    )


def simpson_length(solution: DihedralSolution) -> float:
    """Weighted tree length bST * |A12 A34|."""
    return solution.scaffold.bst * float(np.linalg.norm(solution.A34_local - solution.A12_local))


def _node_distance(a: float, ratio: float, cos_node: float) -> float:
    return a / math.sqrt(ratio * ratio - 2.0 * ratio * cos_node + 1.0)


def _along_line(start: np.ndarray, direction: np.ndarray, terminal: np.ndarray, radius: float) -> float:
    rel = start - terminal
    B = float(direction @ rel)
    disc = B * B - (float(rel @ rel) - radius * radius)
    if disc < 0:
        raise Degenerate("Simpson line misses the node sphere")
    return -B + math.sqrt(disc)


def locate_nodes(solution: DihedralSolution) -> Tuple[np.ndarray, np.ndarray]:
    """Steiner nodes O12 and O34 on the Simpson line, in global coordinates.

    Each node is where the line meets the sphere about A1 (resp. A4) whose radius
    follows from the sine law in the triangle A1 O A2 (resp. A3 O A4).
    """
    sc = solution.scaffold
    A1, A2, A3, A4 = sc.points
    b1, b2, b3, b4 = sc.weights
    T12, T34 = solution.T12, solution.T34
    span = T34 - T12
    direction = span / float(np.linalg.norm(span))

    ratio12 = (np.linalg.norm(A2 - T12) / np.linalg.norm(A1 - T12)) * (b2 / b1)
    cos102 = clamp_cos((sc.bst ** 2 - b1 ** 2 - b2 ** 2) / (2.0 * b1 * b2))
    O12 = T12 + _along_line(T12, direction, A1, _node_distance(sc.a12, ratio12, cos102)) * direction

    ratio34 = (np.linalg.norm(A3 - T34) / np.linalg.norm(A4 - T34)) * (b3 / b4)
    cos304 = clamp_cos((sc.bst ** 2 - b3 ** 2 - b4 ** 2) / (2.0 * b3 * b4))
    O34 = T34 - _along_line(T34, -direction, A4, _node_distance(sc.a34, ratio34, cos304)) * direction

    scale = max(sc.a12, sc.a34)
    for node in (O12, O34):
        if np.min(np.linalg.norm(sc.points - node, axis=1)) <= 1e-10 * scale:
            raise DegenerateTree("a Steiner node coincides with a terminal")
    return O12, O34


def with_nodes(solution: DihedralSolution) -> DihedralSolution:
    O12, O34 = locate_nodes(solution)
    T12, T34 = solution.T12, solution.T34
    length = float(np.linalg.norm(T34 - T12))
    tau12 = float((O12 - T12) @ (T34 - T12)) / length
    tau34 = float((T34 - O34) @ (T34 - T12)) / length
    diagnostics = list(solution.diagnostics)
    if not (tau12 >= 0 and tau34 >= 0 and tau12 + tau34 <= length):
        diagnostics.append("nodes-outside-segment")
    return replace(solution, O12=O12, O34=O34, diagnostics=tuple(diagnostics))


def _circle_through(p1: np.ndarray, p2: np.ndarray, p3: np.ndarray) -> Tuple[np.ndarray, float]:
    A = 2.0 * np.array([p2 - p1, p3 - p1])
    rhs = np.array([p2 @ p2 - p1 @ p1, p3 @ p3 - p1 @ p1])
    if abs(np.linalg.det(A)) <= 1e-14 * max(1.0, float(np.abs(A).max()) ** 2):
        raise Degenerate("the first three points are collinear")
    center = np.linalg.solve(A, rhs)
    return center, float(np.linalg.norm(p1 - center))


def concircularity_deviation(points) -> float:
    """Largest relative distance of planar points from the circle through the first three."""
    pts = np.asarray(points, dtype=float)[:, :2]
    center, radius = _circle_through(pts[0], pts[1], pts[2])
    return float(np.max(np.abs(np.linalg.norm(pts - center, axis=1) - radius)) / radius)


def concircularity_points(solution: DihedralSolution) -> np.ndarray:
    """T34', P, T12, E12, E34 in the plane z = 0 of the local frame.

    T34' projects T34 into the plane. P, E12 and E34 are feet of perpendiculars:
    T34' on the parallel to A3A4 through T12, T34' on A1A2, and T12 on the
    parallel to A3A4 through M12.
    """
    phi = solution.scaffold.phi
    w = np.array([math.cos(phi), math.sin(phi)])
    T12 = solution.T12_local[:2]
    T34p = solution.T34_local[:2]
    P = T12 + ((T34p - T12) @ w) * w
    E12 = np.array([T34p[0], 0.0])
    E34 = (T12 @ w) * w
    return np.vstack([T34p, P, T12, E12, E34])


def concircularity_check(solution: DihedralSolution) -> float:
    return concircularity_deviation(concircularity_points(solution))
