"""Distance-geometry primitives: Cayley-Menger determinants, volumes, circumspheres
and the generalized cosine laws that express the distance from an interior point
to a vertex through the distances to the other vertices.
"""
import math
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

import numpy as np

from core.config import settings
from core.errors import Degenerate, DimensionMismatch, DomainError, NotInterior, NotRealizable
from core.utils import clamp_cos
from geometry.types import DihedralConfig, DistanceMatrix, SchlafliConfig

Number = Union[int, float]

_ANGLE_SLACK = 1e-9


def _squared_entry(value: float) -> Union[int, Fraction]:
    sq = value * value
    if float(value).is_integer() or (sq.is_integer() and abs(sq) < 2 ** 52):
        # integral squares stay in machine-exact integers
        return int(round(sq))
    return Fraction(value) ** 2


def _bareiss_det(rows: List[List[Union[int, Fraction]]]) -> Union[int, Fraction]:
    """Fraction-free elimination; exact for integer and rational entries."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev: Union[int, Fraction] = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                if isinstance(num, int) and isinstance(prev, int):
                    m[i][j] = num // prev
                else:
                    m[i][j] = Fraction(num) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def cayley_menger_matrix(dm: DistanceMatrix) -> list:
    """Squared distances bordered by ones in the last row and column, zero corner."""
    n = dm.n
    rows = [[_squared_entry(float(dm.d[i, j])) if i != j else 0 for j in range(n)] + [1] for i in range(n)]
    rows.append([1] * n + [0])
    return rows


def cayley_menger_det(dm: DistanceMatrix) -> Number:
    """Bordered Cayley-Menger determinant.

    Equals (-1)^(N+1) 2^N (N!)^2 Vol^2 for an N-simplex: +288 Vol^2 for a tetrahedron.
    Integer squared lengths give an exact int.
    """
    if not isinstance(dm, DistanceMatrix):
        raise DimensionMismatch("cayley_menger_det expects a DistanceMatrix")
    if dm.n < 2:
        raise DimensionMismatch("at least two vertices are required")
    det = _bareiss_det(cayley_menger_matrix(dm))
    if isinstance(det, Fraction):
        if det.denominator == 1:
            return int(det.numerator)
        return float(det)
    return int(det)


def volume_factor(N: int) -> int:
    """Signed factor s with det = s * Vol^2 for an N-simplex."""
    return (-1) ** (N + 1) * 2 ** N * math.factorial(N) ** 2


def volume_squared(dm: DistanceMatrix) -> float:
    return float(Fraction(cayley_menger_det(dm)) / volume_factor(dm.dimension))


def is_nonnegative_det(dm: DistanceMatrix, tolerance: float = None) -> bool:
    """Sign test with the scale-relative slack used for realizability."""
    tol = settings.realizability_tolerance if tolerance is None else tolerance
    N = dm.dimension
    signed = Fraction(cayley_menger_det(dm)) * (1 if volume_factor(N) > 0 else -1)
    scale = dm.max_edge() ** (2 * N)
    return float(signed) >= -tol * scale


def simplex_volume(dm: DistanceMatrix) -> float:
    """N-dimensional volume of the simplex with the given edge lengths."""
    if not is_nonnegative_det(dm):
        raise NotRealizable(
            f"Cayley-Menger determinant has the wrong sign for a {dm.dimension}-simplex"
        )
    return math.sqrt(max(volume_squared(dm), 0.0))


def coordinate_volume(vertices: np.ndarray) -> float:
    pts = np.asarray(vertices, dtype=float)
    edges = pts[1:] - pts[0]
    if edges.shape[0] != edges.shape[1]:
        gram = edges @ edges.T
        return math.sqrt(max(np.linalg.det(gram), 0.0)) / math.factorial(edges.shape[0])
    return abs(np.linalg.det(edges)) / math.factorial(edges.shape[0])


def circumcenter(simplex) -> np.ndarray:
    pts = np.asarray(getattr(simplex, "vertices", simplex), dtype=float)
    a = 2.0 * (pts[1:] - pts[0])
    rhs = (pts[1:] ** 2).sum(axis=1) - (pts[0] ** 2).sum()
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch("circumcenter needs N+1 vertices in R^N")
    scale = max(float(np.abs(a).max()), 1.0)
    if abs(np.linalg.det(a / scale)) < 1e-12:
        raise Degenerate("vertices do not span a full-dimensional simplex")
    return np.linalg.solve(a, rhs)


def circumradius(simplex) -> float:
    """Radius of the sphere through all vertices of an embedded simplex."""
    pts = np.asarray(getattr(simplex, "vertices", simplex), dtype=float)
    return float(np.linalg.norm(circumcenter(pts) - pts[0]))


# Generalized cosine laws


def _angle_cos(adjacent1: float, adjacent2: float, opposite: float) -> float:
    if adjacent1 <= 0 or adjacent2 <= 0:
        raise DomainError("angle needs two positive adjacent sides")
    return (adjacent1 ** 2 + adjacent2 ** 2 - opposite ** 2) / (2.0 * adjacent1 * adjacent2)


def generalized_cosine_r2(a20: float, a2i: float, h012: float, angle_12i: float) -> float:
    """Distance a_i0 in the plane from a20, the height h012 of A0 over A1A2 and the angle at A2.

    A0 and A_i lie on the same side of the line A1A2 and A0 projects onto the ray A2A1.
    """
    radicand = a20 ** 2 - h012 ** 2
    if radicand < -1e-12 * max(a20, 1.0) ** 2:
        raise DomainError("height h012 exceeds a20")
    p2 = math.sqrt(max(radicand, 0.0))
    value = a20 ** 2 + a2i ** 2 - 2.0 * a2i * (p2 * math.cos(angle_12i) + h012 * math.sin(angle_12i))
    if value < -1e-12 * max(a20, a2i) ** 2:
        raise DomainError("negative radicand in the planar cosine law")
    return math.sqrt(max(value, 0.0))


def generalized_cosine_r3(cfg: DihedralConfig) -> float:
    """Distance a_i0 from the vertex A2 side of the dihedral configuration."""
    cos12i = clamp_cos(_angle_cos(cfg.a12, cfg.a2i, cfg.a1i))
    sin12i = math.sqrt(1.0 - cos12i ** 2)
    value = cfg.a20 ** 2 + cfg.a2i ** 2 - 2.0 * cfg.a2i * (
        cfg.p2 * cos12i + cfg.h012 * sin12i * math.cos(cfg.alpha_g - cfg.alpha)
    )
    if value < -1e-9 * max(cfg.a20, cfg.a2i) ** 2:
        raise DomainError("negative radicand in the dihedral cosine law")
    return math.sqrt(max(value, 0.0))


def generalized_cosine_r3_from_a1(cfg: DihedralConfig) -> float:
    """Same distance computed from the vertex A1 side."""
    cos21i = clamp_cos(_angle_cos(cfg.a12, cfg.a1i, cfg.a2i))
    sin21i = math.sqrt(1.0 - cos21i ** 2)
    value = cfg.a10 ** 2 + cfg.a1i ** 2 - 2.0 * cfg.a1i * (
        cfg.p1 * cos21i + cfg.h012 * sin21i * math.cos(cfg.alpha_g - cfg.alpha)
    )
    if value < -1e-9 * max(cfg.a10, cfg.a1i) ** 2:
        raise DomainError("negative radicand in the dihedral cosine law")
    return math.sqrt(max(value, 0.0))


def _dihedral_from_third(a12: float, a1x: float, a2x: float, a13: float, a23: float, a3x: float) -> float:
    """Dihedral angle at edge A1A2 between the half-planes through A3 and through X."""
    p2 = (a2x ** 2 + a12 ** 2 - a1x ** 2) / (2.0 * a12)
    h = math.sqrt(max(a2x ** 2 - p2 ** 2, 0.0))
    cos123 = clamp_cos(_angle_cos(a12, a23, a13))
    sin123 = math.sqrt(1.0 - cos123 ** 2)
    if sin123 <= 1e-15:
        raise Degenerate("A1, A2 and A3 are collinear")
    if h <= 1e-12 * max(a12, a2x):
        # X on the line A1A2: every dihedral angle describes it
        return 0.0
    c = ((a2x ** 2 + a23 ** 2 - a3x ** 2) / (2.0 * a23) - p2 * cos123) / (h * sin123)
    if c < -1.0 - _ANGLE_SLACK or c > 1.0 + _ANGLE_SLACK:
        raise NotInterior(f"recovered dihedral cosine {c:.6g} is outside [-1, 1]")
    return math.acos(clamp_cos(c))


def dihedral_angle(a10: float, a20: float, a30: float, dm: DistanceMatrix) -> float:
    """Angle alpha of A0 about A1A2 measured from the half-plane of A3 (vertices 0-based in dm)."""
    d = dm.d
    return _dihedral_from_third(d[0, 1], a10, a20, d[0, 2], d[1, 2], a30)


def gauge_angle(dm: DistanceMatrix, target: int) -> float:
    """Dihedral angle alpha_g of vertex `target` about A1A2 measured from A3."""
    d = dm.d
    return _dihedral_from_third(d[0, 1], d[0, target], d[1, target], d[0, 2], d[1, 2], d[2, target])


def _as_tetrahedron(edges) -> DistanceMatrix:
    if isinstance(edges, DistanceMatrix):
        dm = edges
    else:
        dm = DistanceMatrix.from_edges(4, list(edges))
    if dm.n != 4:
        raise DimensionMismatch("a tetrahedron needs four vertices")
    return dm


def a40_from_interior_distances(a10: float, a20: float, a30: float, edge_sextuple) -> float:
    """Fourth distance |A0A4| of an interior point from the three others.

    `edge_sextuple` is a DistanceMatrix or lengths (a12, a13, a14, a23, a24, a34).
    """
    dm = _as_tetrahedron(edge_sextuple)
    d = dm.d
    alpha = dihedral_angle(a10, a20, a30, dm)
    cfg = DihedralConfig(
        a10=a10, a20=a20, a12=float(d[0, 1]), a2i=float(d[1, 3]), a1i=float(d[0, 3]),
        alpha=alpha, alpha_g=gauge_angle(dm, 3),
    )
    return generalized_cosine_r3(cfg)


def _plane_components(a12: float, a1x: float, a2x: float, cos123: float, sin123: float,
                      a23: float, a3x: float) -> Tuple[float, float, float]:
    """Coordinates of X relative to A2 in the frame (A2->A1, towards A3 in-plane, normal).

    Returns (along, in-plane, off-plane) with off-plane >= 0.
    """
    p2 = (a2x ** 2 + a12 ** 2 - a1x ** 2) / (2.0 * a12)
    h = math.sqrt(max(a2x ** 2 - p2 ** 2, 0.0))
    if h <= 1e-12 * max(a12, a2x, 1e-300):
        return p2, 0.0, 0.0
    c = ((a2x ** 2 + a23 ** 2 - a3x ** 2) / (2.0 * a23) - p2 * cos123) / (h * sin123)
    if c < -1.0 - _ANGLE_SLACK or c > 1.0 + _ANGLE_SLACK:
        raise DomainError(f"dihedral cosine {c:.6g} is outside [-1, 1]")
    c = clamp_cos(c)
    return p2, h * c, h * math.sqrt(1.0 - c * c)


def schlafli_heights(cfg: SchlafliConfig, dm: DistanceMatrix) -> Tuple[float, float, float]:
    """(h_{0,12}, h_{0,123}, h_{0,1234}) for A0 in a 4-simplex."""
    d = dm.d
    a12 = float(d[0, 1])
    p2 = (cfg.a20 ** 2 + a12 ** 2 - cfg.a10 ** 2) / (2.0 * a12)
    h012 = math.sqrt(max(cfg.a20 ** 2 - p2 ** 2, 0.0))
    cos123 = clamp_cos(_angle_cos(a12, d[1, 2], d[0, 2]))
    _, _, h0123 = _plane_components(a12, cfg.a10, cfg.a20, cos123, math.sqrt(1 - cos123 ** 2), d[1, 2], cfg.a30)
    return h012, h0123, h0123 * math.sin(cfg.beta)


def generalized_cosine_r4(cfg: SchlafliConfig, edge_tentuple) -> Tuple[float, float]:
    """Distances (a40, a50) of A0 in a 4-simplex from a10, a20, a30 and beta.

    `edge_tentuple` is a DistanceMatrix over five vertices or its ten lengths in
    `combinations` order. A4 lies on the positive side of the plane A1A2A3 and A5
    on the positive side of the hyperplane A1A2A3A4.
    """
    if isinstance(edge_tentuple, DistanceMatrix):
        dm = edge_tentuple
    else:
        dm = DistanceMatrix.from_edges(5, list(edge_tentuple))
    if dm.n != 5:
        raise DimensionMismatch("a 4-simplex needs five vertices")
    d = dm.d
    a12, a23 = float(d[0, 1]), float(d[1, 2])
    cos123 = clamp_cos(_angle_cos(a12, a23, d[0, 2]))
    sin123 = math.sqrt(1.0 - cos123 ** 2)
    if sin123 <= 1e-15:
        raise Degenerate("A1, A2 and A3 are collinear")

    p0, q0, h0123 = _plane_components(a12, cfg.a10, cfg.a20, cos123, sin123, a23, cfg.a30)
    p4, q4, h4 = _plane_components(a12, d[0, 3], d[1, 3], cos123, sin123, a23, d[2, 3])
    p5, q5, h5 = _plane_components(a12, d[0, 4], d[1, 4], cos123, sin123, a23, d[2, 4])

    # gamma: rotation of A5 about the plane A1A2A3 away from A4
    base45 = (p4 - p5) ** 2 + (q4 - q5) ** 2
    if h4 <= 1e-12 or h5 <= 1e-12:
        raise Degenerate("A4 or A5 lies in the plane A1A2A3")
    cos_gamma = (base45 + h4 ** 2 + h5 ** 2 - d[3, 4] ** 2) / (2.0 * h4 * h5)
    if abs(cos_gamma) > 1.0 + _ANGLE_SLACK:
        raise DomainError("edge lengths do not close the 4-simplex")
    gamma = math.acos(clamp_cos(cos_gamma))

    beta = cfg.beta
    x4_sq = (p0 - p4) ** 2 + (q0 - q4) ** 2 + (h0123 * math.cos(beta) - h4) ** 2
    a40_sq = x4_sq + (h0123 * math.sin(beta)) ** 2
    a50_sq = (p0 - p5) ** 2 + (q0 - q5) ** 2 + h0123 ** 2 + h5 ** 2 \
        - 2.0 * h0123 * h5 * math.cos(beta - gamma)
    if min(a40_sq, a50_sq) < -1e-9 * dm.max_edge() ** 2:
        raise DomainError("negative radicand in the Schlafli cosine law")
    return math.sqrt(max(a40_sq, 0.0)), math.sqrt(max(a50_sq, 0.0))


class GeometryService:
    """Facade used by the HTTP routes."""

    def distance_matrix(self, n: int, lengths: Sequence[float]) -> DistanceMatrix:
        return DistanceMatrix.from_edges(n, lengths)

    def describe(self, dm: DistanceMatrix) -> dict:
        det = cayley_menger_det(dm)
        volume = simplex_volume(dm)
        from embedding.service import embed_distance_matrix

        radius = circumradius(embed_distance_matrix(dm)) if volume > 0 else None
        return {"determinant": det, "volume": volume, "circumradius": radius}


geometry_service = GeometryService()
