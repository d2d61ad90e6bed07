from typing import Optional, Sequence, Union

import numpy as np

from core.config import settings
from core.errors import BadWeights, Degenerate, DimensionMismatch, NotRealizable
from core.logging import get_logger
from embedding.types import EmbeddedSimplex
from geometry.service import is_nonnegative_det
from geometry.types import DistanceMatrix
from realizability.types import EdgeAssignment

logger = get_logger(__name__)


def gram_matrix(dm: DistanceMatrix) -> np.ndarray:
    """G[i][j] = (a_1i^2 + a_1j^2 - a_ij^2) / 2 anchored at the first vertex."""
    sq = dm.d ** 2
    first = sq[0, 1:]
    return 0.5 * (first[:, None] + first[None, :] - sq[1:, 1:])


def embed_distance_matrix(dm: DistanceMatrix,
                          source: Optional[Union[EdgeAssignment, DistanceMatrix]] = None) -> EmbeddedSimplex:
    """Triangular factorization of the Gram matrix into rigid normal form coordinates."""
    N = dm.dimension
    gram = gram_matrix(dm)
    scale = dm.max_edge() ** 2
    tol = settings.embedding_pivot_tolerance * scale
    coords = np.zeros((N, N))
    for k in range(N):
        pivot = gram[k, k] - float(coords[k, :k] @ coords[k, :k])
        if k == N - 1 and pivot < 0:
            # the last pivot carries the full determinant's sign
            if not is_nonnegative_det(dm):
                raise NotRealizable(f"negative Gram pivot {pivot:.3e} at vertex {k + 2}")
            pivot = 0.0
        elif pivot < -tol:
            raise NotRealizable(f"negative Gram pivot {pivot:.3e} at vertex {k + 2}")
        if abs(pivot) <= tol:
            if k < N - 1:
                raise Degenerate(f"vertices 1..{k + 2} are affinely dependent")
            coords[k, k] = 0.0
            continue
        coords[k, k] = np.sqrt(pivot)
        for i in range(k + 1, N):
            coords[i, k] = (gram[i, k] - float(coords[i, :k] @ coords[k, :k])) / coords[k, k]
    vertices = np.vstack([np.zeros(N), coords])

    measured = DistanceMatrix.from_points(vertices).d
    off = ~np.eye(dm.n, dtype=bool)
    error = float(np.max(np.abs(measured[off] - dm.d[off]) / dm.d[off]))
    if error > 1e-9:
        logger.warning("embedding distance error %.3e exceeds 1e-9", error)
    return EmbeddedSimplex(N=N, vertices=vertices, source=source if source is not None else dm,
                           max_distance_error=error)


def embed_simplex(assign: EdgeAssignment) -> EmbeddedSimplex:
    """Coordinates realizing an edge assignment."""
    return embed_distance_matrix(assign.distance_matrix(), source=assign)


def barycentric_coordinates(simplex: EmbeddedSimplex, point: Sequence[float]) -> np.ndarray:
    verts = np.asarray(getattr(simplex, "vertices", simplex), dtype=float)
    p = np.asarray(point, dtype=float)
    if p.shape != (verts.shape[1],):
        raise DimensionMismatch("point dimension does not match the simplex")
    system = np.vstack([verts.T, np.ones(len(verts))])
    rhs = np.append(p, 1.0)
    return np.linalg.solve(system, rhs)


def interior_point(simplex: EmbeddedSimplex, barycentric: Sequence[float]) -> np.ndarray:
    """Convex combination of the vertices."""
    lam = np.asarray(barycentric, dtype=float)
    if lam.shape != (simplex.N + 1,):
        raise BadWeights(f"expected {simplex.N + 1} barycentric weights")
    if np.any(lam < 0) or abs(lam.sum() - 1.0) > 1e-12:
        raise BadWeights("barycentric weights must be nonnegative and sum to 1")
    return lam @ simplex.vertices


def random_interior_point(simplex: EmbeddedSimplex, rng: np.random.Generator) -> np.ndarray:
    lam = rng.dirichlet(np.ones(simplex.N + 1))
    return interior_point(simplex, lam / lam.sum())
