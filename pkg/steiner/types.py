from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from core.errors import DomainError

Pairing = Tuple[Tuple[int, int], Tuple[int, int]]

# the three ways to split four terminals into two edges (0-based)
PAIRINGS: Tuple[Pairing, ...] = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


@dataclass(frozen=True)
class SteinerTopology:
    """Tree over terminals 0..n-1 and Steiner nodes n..n+s-1."""

    n_terminals: int
    n_steiner: int
    edges: Tuple[Tuple[int, int], ...]
    intermediate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(sorted(e)) for e in self.edges))
        self.validate()

    @property
    def node_count(self) -> int:
        return self.n_terminals + self.n_steiner

    def is_terminal(self, node: int) -> bool:
        return node < self.n_terminals

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.node_count))
        g.add_edges_from(self.edges)
        return g

    def validate(self) -> None:
        g = self.graph()
        if any(not 0 <= v < self.node_count for e in self.edges for v in e):
            raise DomainError("edge refers to an unknown node")
        if not nx.is_tree(g):
            raise DomainError("topology must be a connected acyclic graph")
        if self.n_steiner > max(self.n_terminals - 2, 0):
            raise DomainError("too many Steiner nodes for the terminal count")
        if self.n_steiner == 0:
            return
        for t in range(self.n_terminals):
            if g.degree[t] != 1:
                raise DomainError(f"terminal {t} must have degree 1")
        high = [s for s in self.steiner_nodes if g.degree[s] > 3]
        if any(g.degree[s] < 3 for s in self.steiner_nodes):
            raise DomainError("Steiner nodes need degree at least 3")
        if high and not self.intermediate:
            raise DomainError("a full topology has only degree-3 Steiner nodes")
        if len(high) > 1:
            raise DomainError("an intermediate topology has a single high-degree node")

    @property
    def steiner_nodes(self) -> List[int]:
        return list(range(self.n_terminals, self.node_count))

    def neighbors(self, node: int) -> List[int]:
        return sorted(self.graph().neighbors(node))

    def node_types(self) -> List[int]:
        """1, 2 or 3 for Steiner nodes joined to two, one or no terminals."""
        g = self.graph()
        out = []
        for s in self.steiner_nodes:
            terminals = sum(1 for v in g.neighbors(s) if self.is_terminal(v))
            out.append({2: 1, 1: 2, 0: 3}.get(terminals, 1))
        return out

    def edge_weight(self, edge: Tuple[int, int], weights: Sequence[float], bst: float) -> float:
        a, b = edge
        if self.is_terminal(a) and self.is_terminal(b):
            # star: the leaf carries its own weight
            g = self.graph()
            leaf = a if g.degree[a] == 1 else b
            return float(weights[leaf])
        if self.is_terminal(a):
            return float(weights[a])
        if self.is_terminal(b):
            return float(weights[b])
        return float(bst)

    @classmethod
    def caterpillar(cls, n_terminals: int) -> "SteinerTopology":
        """Chain of n-2 Steiner nodes; the end nodes take two terminals each."""
        if n_terminals < 3:
            raise DomainError("a caterpillar needs at least three terminals")
        s = n_terminals - 2
        first = n_terminals
        if s == 1:
            return cls(n_terminals, 1, tuple((t, first) for t in range(n_terminals)))
        edges = [(0, first), (1, first)]
        for k in range(1, s - 1):
            edges.append((k + 1, first + k))
        edges += [(n_terminals - 2, first + s - 1), (n_terminals - 1, first + s - 1)]
        edges += [(first + k, first + k + 1) for k in range(s - 1)]
        return cls(n_terminals, s, tuple(edges))

    @classmethod
    def for_pairing(cls, pairing: Pairing) -> "SteinerTopology":
        (i, j), (k, l) = pairing
        return cls(4, 2, ((i, 4), (j, 4), (k, 5), (l, 5), (4, 5)))

    @classmethod
    def star(cls, n_terminals: int, center: int) -> "SteinerTopology":
        return cls(n_terminals, 0, tuple((center, t) for t in range(n_terminals) if t != center))

    @classmethod
    def intermediate_example(cls) -> "SteinerTopology":
        """Six terminals: two degree-3 nodes feeding one degree-4 node."""
        return cls(6, 3, ((0, 6), (1, 6), (2, 7), (3, 7), (6, 8), (7, 8), (4, 8), (5, 8)),
                   intermediate=True)


@dataclass(frozen=True, eq=False)
class SimpsonScaffold:
    """Frame and lengths for a tetrahedron split into the edges A1A2 and A3A4.

    The frame has M12 at the origin, A1A2 on the x-axis, and M34 = (0, 0, H) with
    the direction A4 -> A3 equal to (cos phi, sin phi, 0).
    """

    points: np.ndarray
    weights: np.ndarray
    bst: float
    pairing: Pairing
    swapped: bool
    origin: np.ndarray
    basis: np.ndarray
    H: float
    phi: float
    M12: np.ndarray
    M34: np.ndarray
    s1: float
    s4: float
    h12: float
    h34: float
    A1H12: float
    A4H34: float
    s12: float
    s34: float
    diagnostics: Tuple[str, ...] = ()

    def to_local(self, p) -> np.ndarray:
        return self.basis @ (np.asarray(p, dtype=float) - self.origin)

    def to_global(self, p) -> np.ndarray:
        return self.origin + self.basis.T @ np.asarray(p, dtype=float)

    @property
    def a12(self) -> float:
        return float(np.linalg.norm(self.points[1] - self.points[0]))

    @property
    def a34(self) -> float:
        return float(np.linalg.norm(self.points[2] - self.points[3]))


@dataclass(frozen=True, eq=False)
class DihedralSolution:
    """Simpson line of a two-node weighted Steiner tree on a tetrahedron.

    delta12 and delta34 are the rotation angles of the weighted third vertices about
    the edges, in (0, pi); alpha is the inclination of the Simpson line to the plane
    through A1A2 parallel to A3A4.
    """

    scaffold: SimpsonScaffold
    delta12: float
    delta34: float
    alpha: float
    iterations: int
    residual: float
    T12_local: np.ndarray
    T34_local: np.ndarray
    A12_local: np.ndarray
    A34_local: np.ndarray
    O12: Optional[np.ndarray] = None
    O34: Optional[np.ndarray] = None
    diagnostics: Tuple[str, ...] = ()

    @property
    def phi(self) -> float:
        return self.scaffold.phi

    @property
    def H(self) -> float:
        return self.scaffold.H

    @property
    def h12(self) -> float:
        return self.scaffold.h12

    @property
    def h34(self) -> float:
        return self.scaffold.h34

    @property
    def M12H12(self) -> float:
        return self.scaffold.s12

    @property
    def M34H34(self) -> float:
        return self.scaffold.s34

    @property
    def T12(self) -> np.ndarray:
        return self.scaffold.to_global(self.T12_local)

    @property
    def T34(self) -> np.ndarray:
        return self.scaffold.to_global(self.T34_local)

    @property
    def plane_angle12(self) -> float:
        """Acute angle between the planes (A1A2, A12) and (A1A2, parallel to A3A4)."""
        return min(self.delta12, np.pi - self.delta12)

    @property
    def plane_angle34(self) -> float:
        return min(self.delta34, np.pi - self.delta34)


@dataclass(frozen=True, eq=False)
class SteinerTree:
    topology: SteinerTopology
    positions: np.ndarray
    weighted_length: float
    balance_residuals: np.ndarray
    flags: Tuple[str, ...] = ()
    method: str = "descent"
    pairing: Optional[Pairing] = None
    dihedral: Optional[DihedralSolution] = None
    candidates: Tuple["SteinerTree", ...] = field(default=())

    @property
    def degenerate(self) -> bool:
        return any(f in ("gauss", "collapsed", "fermat") for f in self.flags)

    @property
    def steiner_positions(self) -> np.ndarray:
        return self.positions[self.topology.n_terminals:]
