from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from core.errors import DimensionMismatch, DomainError


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric matrix of pairwise lengths a_ij over n vertices."""

    n: int
    d: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.d, dtype=float)
        if d.shape != (self.n, self.n):
            raise DimensionMismatch(f"distance matrix must be {self.n}x{self.n}, got {d.shape}")
        if not np.allclose(d, d.T, rtol=0.0, atol=0.0):
            raise DomainError("distance matrix must be symmetric")
        if np.any(np.diag(d) != 0):
            raise DomainError("distance matrix must have a zero diagonal")
        off = d[~np.eye(self.n, dtype=bool)]
        if np.any(off <= 0) or np.any(~np.isfinite(off)):
            raise DomainError("off-diagonal lengths must be finite and positive")
        d.setflags(write=False)
        object.__setattr__(self, "d", d)

    @property
    def dimension(self) -> int:
        return self.n - 1

    @classmethod
    def from_edges(cls, n: int, lengths: Sequence[float]) -> "DistanceMatrix":
        """Build from lengths listed in `combinations(range(n), 2)` order, i.e. a12, a13, ..., a(n-1)n."""
        pairs = list(combinations(range(n), 2))
        if len(lengths) != len(pairs):
            raise DimensionMismatch(f"{n} vertices need {len(pairs)} lengths, got {len(lengths)}")
        d = np.zeros((n, n))
        for (i, j), value in zip(pairs, lengths):
            d[i, j] = d[j, i] = float(value)
        return cls(n=n, d=d)

    @classmethod
    def from_points(cls, points: Sequence[Sequence[float]]) -> "DistanceMatrix":
        pts = np.asarray(points, dtype=float)
        diff = pts[:, None, :] - pts[None, :, :]
        return cls(n=len(pts), d=np.sqrt((diff ** 2).sum(axis=-1)))

    def sub(self, indices: Sequence[int]) -> "DistanceMatrix":
        idx = list(indices)
        return DistanceMatrix(n=len(idx), d=self.d[np.ix_(idx, idx)])

    def edges(self) -> list:
        return [float(self.d[i, j]) for i, j in combinations(range(self.n), 2)]

    def max_edge(self) -> float:
        return float(self.d.max())


@dataclass(frozen=True)
class DihedralConfig:
    """Interior point A0 seen from the line A1A2 of a tetrahedron.

    `alpha` is the dihedral angle of the half-plane (A1A2, A0) measured from the
    half-plane (A1A2, A3); `alpha_g` is the same angle for the target vertex Ai.
    """

    a10: float
    a20: float
    a12: float
    a2i: float
    a1i: float
    alpha: float
    alpha_g: float

    def __post_init__(self):
        for name in ("a10", "a20", "a12", "a2i", "a1i"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be nonnegative")
        if self.a12 <= 0:
            raise DomainError("a12 must be positive")

    @property
    def p2(self) -> float:
        """Signed projection of A2A0 on the direction A2 -> A1."""
        return (self.a20 ** 2 + self.a12 ** 2 - self.a10 ** 2) / (2.0 * self.a12)

    @property
    def p1(self) -> float:
        return self.a12 - self.p2

    @property
    def h012(self) -> float:
        h2 = self.a20 ** 2 - self.p2 ** 2
        if h2 < -1e-9 * max(self.a20, self.a12) ** 2:
            raise DomainError("a10, a20 and a12 violate the triangle inequality")
        return float(np.sqrt(max(h2, 0.0)))


@dataclass(frozen=True)
class SchlafliConfig:
    """Interior point A0 of a 4-simplex given by a10, a20, a30 and the angle beta.

    beta rotates A0 about the plane A1A2A3, measured from the side of A4, so that
    beta = 0 puts A0 in the hyperplane A1A2A3A4.
    """

    a10: float
    a20: float
    a30: float
    beta: float

    def __post_init__(self):
        if not 0.0 <= self.beta <= np.pi:
            raise DomainError("beta must lie in [0, pi]")
        if min(self.a10, self.a20, self.a30) < 0:
            raise DomainError("distances must be nonnegative")
