from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from geometry.types import DistanceMatrix
from realizability.types import EdgeAssignment


@dataclass(frozen=True, eq=False)
class EmbeddedSimplex:
    """N+1 vertices in R^N in rigid normal form.

    Vertex 1 sits at the origin, vertex 2 on the first axis, and vertex k spans only the
    first k-1 axes with a nonnegative last coordinate.
    """

    N: int
    vertices: np.ndarray
    source: Optional[Union[EdgeAssignment, DistanceMatrix]] = None
    max_distance_error: float = 0.0

    def __post_init__(self):
        verts = np.array(self.vertices, dtype=float)
        verts.setflags(write=False)
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_points(cls, points) -> "EmbeddedSimplex":
        """Wrap raw coordinates (not necessarily in normal form)."""
        pts = np.asarray(points, dtype=float)
        return cls(N=pts.shape[1], vertices=pts, source=DistanceMatrix.from_points(pts))

    @property
    def distance_matrix(self) -> DistanceMatrix:
        return DistanceMatrix.from_points(self.vertices)

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)
