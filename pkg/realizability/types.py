import math
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Dict, Optional, Sequence, Tuple

from core.errors import DimensionMismatch, DomainError
from geometry.types import DistanceMatrix


def dimension_for_edge_count(m: int) -> int:
    """N with N(N+1)/2 == m."""
    N = int((math.isqrt(8 * m + 1) - 1) // 2)
    if N * (N + 1) // 2 != m or N < 1:
        raise DimensionMismatch(f"{m} lengths do not form the edge set of a simplex")
    return N


@dataclass(frozen=True)
class EdgeTuple:
    """Multiset of N(N+1)/2 lengths, stored sorted ascending."""

    N: int
    lengths: Tuple[float, ...]

    def __post_init__(self):
        m = self.N * (self.N + 1) // 2
        if self.N < 2:
            raise DomainError("dimension must be at least 2")
        if len(self.lengths) != m:
            raise DimensionMismatch(f"N={self.N} needs {m} lengths, got {len(self.lengths)}")
        if any((not math.isfinite(v)) or v <= 0 for v in self.lengths):
            raise DomainError("lengths must be finite and positive")
        object.__setattr__(self, "lengths", tuple(sorted(float(v) for v in self.lengths)))

    @property
    def m(self) -> int:
        return len(self.lengths)

    @classmethod
    def from_lengths(cls, lengths: Sequence[float], N: Optional[int] = None) -> "EdgeTuple":
        if N is None:
            N = dimension_for_edge_count(len(lengths))
        return cls(N=N, lengths=tuple(lengths))

    @classmethod
    def consecutive(cls, start: float, N: int, step: float = 1.0) -> "EdgeTuple":
        m = N * (N + 1) // 2
        return cls(N=N, lengths=tuple(start + k * step for k in range(m)))

    def is_consecutive_integers(self) -> bool:
        vals = self.lengths
        return all(v.is_integer() for v in vals) and all(b - a == 1 for a, b in zip(vals, vals[1:]))

    def distinct(self) -> bool:
        return len(set(self.lengths)) == self.m


def edge_pairs(n: int) -> list:
    """0-based vertex pairs in the fixed edge order (1,2), (1,3), ..., (n-1,n)."""
    return list(combinations(range(n), 2))


def canonical_key(lengths: Sequence[float], N: int) -> Tuple[float, ...]:
    """Lexicographically smallest relabeling of an edge vector."""
    n = N + 1
    pairs = edge_pairs(n)
    index = {p: k for k, p in enumerate(pairs)}
    best = None
    for perm in permutations(range(n)):
        candidate = tuple(
            lengths[index[tuple(sorted((perm[i], perm[j])))]] for i, j in pairs
        )
        if best is None or candidate < best:
            best = candidate
    return best


@dataclass(frozen=True)
class EdgeAssignment:
    """Lengths placed on the edges of an (N+1)-vertex simplex.

    `lengths` follows `edge_pairs` order: a12, a13, ..., a1n, a23, ...
    """

    tuple: EdgeTuple
    lengths: Tuple[float, ...]
    canonical_key: Tuple[float, ...] = field(default=None, compare=False)

    def __post_init__(self):
        lengths = tuple(float(v) for v in self.lengths)
        if tuple(sorted(lengths)) != self.tuple.lengths:
            raise DomainError("assignment is not a bijection onto the tuple's multiset")
        object.__setattr__(self, "lengths", lengths)
        if self.canonical_key is None:
            object.__setattr__(self, "canonical_key", canonical_key(lengths, self.tuple.N))

    @classmethod
    def from_lengths(cls, lengths: Sequence[float], N: Optional[int] = None) -> "EdgeAssignment":
        return cls(tuple=EdgeTuple.from_lengths(lengths, N), lengths=tuple(lengths))

    @classmethod
    def from_edge_map(cls, edge_map: Dict[Tuple[int, int], float]) -> "EdgeAssignment":
        """Build from a 1-based map {(i, j): length}; (i, j) and (j, i) are the same edge."""
        normalized = {tuple(sorted(k)): v for k, v in edge_map.items()}
        N = dimension_for_edge_count(len(normalized))
        lengths = []
        for i, j in edge_pairs(N + 1):
            if (i + 1, j + 1) not in normalized:
                raise DimensionMismatch(f"missing edge ({i + 1},{j + 1})")
            lengths.append(normalized[(i + 1, j + 1)])
        return cls.from_lengths(lengths, N)

    @classmethod
    def from_paper_columns(cls, a12, a43, a13, a23, a24, a14) -> "EdgeAssignment":
        """Tetrahedron given in the table column order a12, a43, a13, a23, a24, a14."""
        return cls.from_edge_map(
            {(1, 2): a12, (3, 4): a43, (1, 3): a13, (2, 3): a23, (2, 4): a24, (1, 4): a14}
        )

    @property
    def N(self) -> int:
        return self.tuple.N

    @property
    def edge_map(self) -> Dict[Tuple[int, int], float]:
        return {(i + 1, j + 1): v for (i, j), v in zip(edge_pairs(self.N + 1), self.lengths)}

    def length(self, i: int, j: int) -> float:
        """Length of the edge between 1-based vertices i and j."""
        return self.edge_map[tuple(sorted((i, j)))]

    def paper_columns(self) -> Tuple[float, ...]:
        if self.N != 3:
            raise DimensionMismatch("table columns exist only for tetrahedra")
        e = self.edge_map
        return (e[(1, 2)], e[(3, 4)], e[(1, 3)], e[(2, 3)], e[(2, 4)], e[(1, 4)])

    def relabeled(self, perm: Sequence[int]) -> "EdgeAssignment":
        """New vertex i takes the role of old vertex perm[i] (0-based)."""
        e = {(i, j): v for (i, j), v in zip(edge_pairs(self.N + 1), self.lengths)}
        lengths = [e[tuple(sorted((perm[i], perm[j])))] for i, j in edge_pairs(self.N + 1)]
        return EdgeAssignment(tuple=self.tuple, lengths=tuple(lengths), canonical_key=self.canonical_key)

    def distance_matrix(self) -> DistanceMatrix:
        return DistanceMatrix.from_edges(self.N + 1, self.lengths)
