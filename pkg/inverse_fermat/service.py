"""Inverse weighted Fermat problem.

Given an interior point A0 of an N-simplex, the weights that make A0 optimal are
proportional to a_i * Vol(simplex with A0 in place of A_i), where a_i = |A0 A_i|.
The sine form reaches the same weights by projecting the balance condition on
normals of the hyperplanes spanned by all but two rays.
"""
import math
from typing import Optional, Sequence

import numpy as np

from core.errors import Degenerate, DegenerateSubSimplex, DimensionMismatch, DomainError, NotInterior
from core.logging import get_logger
from core.utils import unit_vector
from embedding.service import barycentric_coordinates
from embedding.types import EmbeddedSimplex
from fermat.service import balance_residual, weighted_fermat
from geometry.service import circumcenter, coordinate_volume
from inverse_fermat.types import EpsilonApproximation, InverseSolution

logger = get_logger(__name__)

_INTERIOR_TOL = 1e-12


def _vertices(simplex) -> np.ndarray:
    verts = np.asarray(getattr(simplex, "vertices", simplex), dtype=float)
    if verts.shape[0] != verts.shape[1] + 1:
        raise DimensionMismatch("an N-simplex needs N+1 vertices in R^N")
    return verts


def _interior_barycentric(verts: np.ndarray, point: np.ndarray) -> np.ndarray:
    try:
        lam = barycentric_coordinates(verts, point)
    except np.linalg.LinAlgError as exc:
        raise DegenerateSubSimplex("simplex is degenerate") from exc
    if np.any(lam <= _INTERIOR_TOL):
        raise NotInterior("point is not strictly inside the simplex")
    return lam


def replaced_volumes(simplex, point) -> np.ndarray:
    """Vol(A0 in place of A_i) for every vertex i."""
    verts = _vertices(simplex)
    p = np.asarray(point, dtype=float)
    vols = []
    for i in range(len(verts)):
        sub = verts.copy()
        sub[i] = p
        vols.append(coordinate_volume(sub))
    return np.asarray(vols)


def _round_trip(verts: np.ndarray, weights: np.ndarray, point: np.ndarray) -> float:
    sol = weighted_fermat(verts, weights, raise_on_limit=False)
    return float(np.linalg.norm(sol.point - point))


def invert_weights(simplex, point, C: float = 1.0, verify: bool = True) -> InverseSolution:
    """Weights summing to C whose weighted Fermat point is `point`."""
    if C <= 0:
        raise DomainError("the prescribed sum C must be positive")
    verts = _vertices(simplex)
    p = np.asarray(point, dtype=float)
    _interior_barycentric(verts, p)
    dist = np.linalg.norm(verts - p, axis=1)
    vols = replaced_volumes(verts, p)
    if np.any(vols <= 0):
        raise DegenerateSubSimplex("a replaced sub-simplex has zero volume")
    raw = dist * vols
    weights = C * raw / raw.sum()
    residual = volume_equality_residual(verts, p, weights)
    error = _round_trip(verts, weights, p) if verify else None
    return InverseSolution(weights=weights, C=C, residual=residual, point=p, round_trip_error=error)


def volume_equality_residual(simplex, point, weights) -> float:
    """Spread of B_i / (a_i Vol_i) relative to the first ratio."""
    verts = _vertices(simplex)
    p = np.asarray(point, dtype=float)
    w = np.asarray(weights, dtype=float)
    dist = np.linalg.norm(verts - p, axis=1)
    ratios = w / (dist * replaced_volumes(verts, p))
    return float((ratios.max() - ratios.min()) / ratios[0])


def _planar_weights(rays: np.ndarray, C: float) -> np.ndarray:
    """Three rays in the plane: b_i proportional to the sine of the opposite angle."""

    def sin_between(u, v):
        return math.sqrt(max(0.0, 1.0 - float(np.clip(u @ v, -1.0, 1.0)) ** 2))

    out = np.empty(3)
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        s_jk = sin_between(rays[j], rays[k])
        if s_jk <= 1e-15:
            raise NotInterior("two rays are collinear")
        out[i] = C / (1.0 + sin_between(rays[i], rays[k]) / s_jk + sin_between(rays[i], rays[j]) / s_jk)
    return out


def hyperplane_normal(vectors: np.ndarray, dim: int) -> np.ndarray:
    """Unit normal of the hyperplane spanned by dim-1 vectors."""
    if len(vectors) == 0:
        raise DegenerateSubSimplex("no vectors to span a hyperplane")
    _, s, vt = np.linalg.svd(np.atleast_2d(vectors), full_matrices=True)
    if len(s) < dim - 1 or s[dim - 2] <= 1e-12 * max(s[0], 1.0):
        raise DegenerateSubSimplex("rays do not span a hyperplane")
    return vt[-1]


def sine_ratio_weights(simplex, point, C: float = 1.0) -> InverseSolution:
    """Weights from ratios of normal projections of the unit rays."""
    verts = _vertices(simplex)
    p = np.asarray(point, dtype=float)
    N = verts.shape[1]
    rays = np.array([unit_vector(v - p) for v in verts])
    if np.any(np.linalg.norm(verts - p, axis=1) <= 0):
        raise NotInterior("point coincides with a vertex")
    if N == 2:
        weights = _planar_weights(rays, C)
        angles = [math.acos(float(np.clip(rays[i] @ rays[(i + 1) % 3], -1, 1))) for i in range(3)]
        if abs(sum(angles) - 2 * math.pi) > 1e-9:
            raise NotInterior("point is outside the triangle")
    else:
        weights = np.empty(N + 1)
        for i in range(N + 1):
            ratio_sum = 0.0
            for k in range(N + 1):
                if k == i:
                    continue
                others = rays[[j for j in range(N + 1) if j not in (i, k)]]
                n = hyperplane_normal(others, N)
                si, sk = float(n @ rays[i]), float(n @ rays[k])
                if abs(sk) <= 1e-15 or si * sk >= 0:
                    raise NotInterior("balance projection has the wrong sign")
                ratio_sum += abs(si) / abs(sk)
            weights[i] = C / (1.0 + ratio_sum)
    residual = volume_equality_residual(verts, p, weights)
    return InverseSolution(weights=weights, C=C, residual=residual, point=p)


def epsilon_weights(simplex, eps: float, C: Optional[float] = None) -> EpsilonApproximation:
    """Weights that place the Fermat point at distance eps from the last vertex.

    The point moves from A_{N+1} towards the circumcenter; as eps shrinks the weights
    approach the boundary of the absorbing region of A_{N+1}.
    """
    verts = _vertices(simplex)
    N = verts.shape[1]
    C = float(N + 1) if C is None else C
    apex = verts[N]
    center = circumcenter(verts)
    reach = float(np.linalg.norm(center - apex))
    if not 0 < eps < reach:
        raise Degenerate(f"eps must lie in (0, {reach:.6g})")
    point = apex + eps * (center - apex) / reach
    inverse = sine_ratio_weights(verts, point, C)
    w = inverse.weights
    pull = w[:N] @ np.array([unit_vector(v - apex) for v in verts[:N]])
    error = abs(float(np.linalg.norm(pull)) - float(w[N]))
    return EpsilonApproximation(point=point, weights=inverse, error_estimate=error, eps=eps)


def fermat_point_invariant(points, weights, point, tolerance: float = 1e-6) -> bool:
    """Oracle: the weighted Fermat point of (points, weights) is `point`."""
    pts = np.asarray(points, dtype=float)
    sol = weighted_fermat(pts, np.asarray(weights, dtype=float), raise_on_limit=False)
    return bool(np.linalg.norm(sol.point - np.asarray(point, dtype=float)) <= tolerance)


def geometric_plasticity(points, weights, point, scales: Sequence[float],
                         tolerance: float = 1e-6) -> np.ndarray:
    """Slide each terminal along its ray from the Fermat point `point` by a positive factor.

    Unit directions from `point` do not change, so `point` stays the weighted Fermat point.
    """
    pts = np.asarray(points, dtype=float)
    p = np.asarray(point, dtype=float)
    w = np.asarray(weights, dtype=float)
    if w.shape != (len(pts),):
        raise DimensionMismatch("one weight per terminal is required")
    scale = float(np.abs(w).sum())
    if balance_residual(pts, w, p) > tolerance * scale:
        raise DomainError("point is not the weighted Fermat point of the terminals")
    s = np.asarray(scales, dtype=float)
    if s.shape != (len(pts),) or np.any(s <= 0):
        raise DomainError("one positive scale per terminal is required")
    return p + s[:, None] * (pts - p)


class InverseFermatService:

    def invert(self, vertices, point, C: float, method: str = "volume") -> InverseSolution:
        simplex = EmbeddedSimplex.from_points(vertices)
        if method == "sine":
            return sine_ratio_weights(simplex, point, C)
        return invert_weights(simplex, point, C)


inverse_fermat_service = InverseFermatService()
