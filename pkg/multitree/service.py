"""Fermat, Fermat-Steiner and intermediate multitrees of one edge tuple.

Every incongruent realizable simplex is embedded and solved independently; the
report then picks the global minimum and the maximum-volume simplex.
"""
import itertools
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from core.config import settings
from core.errors import BadWeights, DimensionMismatch, DomainError, NoRealizableAssignment, ThresholdViolation
from core.logging import get_logger
from embedding.service import embed_simplex
from fermat.service import weighted_fermat
from geometry.service import cayley_menger_det, circumradius, simplex_volume
from multitree.types import MultitreeReport, MultitreeRow, TreeMode
from realizability.service import enumerate_incongruent, hertog_consecutive_start, min_consecutive_integer_start
from realizability.types import EdgeAssignment, EdgeTuple
from steiner.service import solve_steiner_tetrahedron
from steiner.topology import solve_steiner_topology, tree_length
from steiner.types import SteinerTopology, SteinerTree

logger = get_logger(__name__)


def _weights(weights: Optional[Sequence[float]], count: int) -> Tuple[float, ...]:
    if weights is None:
        return (1.0,) * count
    w = tuple(float(v) for v in weights)
    if len(w) != count:
        raise DimensionMismatch(f"expected {count} terminal weights, got {len(w)}")
    if any(v < 0 for v in w) or not any(v > 0 for v in w):
        raise BadWeights("weights must be nonnegative and not all zero")
    return w


def _weight_orders(weights: Tuple[float, ...], permute: bool) -> List[Tuple[float, ...]]:
    if not permute:
        return [weights]
    return sorted(set(itertools.permutations(weights)), reverse=True)


def _star_tree(points: np.ndarray, weights: Sequence[float], topology: SteinerTopology) -> SteinerTree:
    return SteinerTree(
        topology=topology, positions=points.copy(),
        weighted_length=tree_length(topology, points, weights, 0.0),
        balance_residuals=np.zeros(0), method="star",
    )


def _solve_row(assign: EdgeAssignment, weights: Tuple[float, ...], mode: TreeMode, bst: Optional[float],
               topology: Optional[SteinerTopology]) -> MultitreeRow:
    simplex = embed_simplex(assign)
    dm = assign.distance_matrix()
    pts = simplex.vertices
    w = np.asarray(weights)
    fermat = weighted_fermat(pts, w)
    steiner = None
    if mode is TreeMode.STEINER:
        if assign.N == 3:
            steiner = solve_steiner_tetrahedron(simplex, w, bst)
        else:
            steiner = solve_steiner_topology(pts, w, bst, SteinerTopology.caterpillar(assign.N + 1))
    elif mode is TreeMode.INTERMEDIATE:
        if topology.n_steiner == 0:
            steiner = _star_tree(pts, w, topology)
        else:
            steiner = solve_steiner_topology(pts, w, bst, topology)
    return MultitreeRow(
        assignment=assign, weights=weights, volume=simplex_volume(dm), circumradius=circumradius(simplex),
        determinant=cayley_menger_det(dm), fermat=fermat, steiner=steiner,
    )


def _global_min_index(rows: Sequence[MultitreeRow], mode: TreeMode) -> int:
    keys = [(round(row.length(mode), 12), row.assignment.canonical_key, row.weights) for row in rows]
    return min(range(len(rows)), key=keys.__getitem__)


def _max_volume_index(rows: Sequence[MultitreeRow]) -> int:
    keys = [(row.determinant, tuple(-v for v in row.assignment.canonical_key)) for row in rows]
    return max(range(len(rows)), key=keys.__getitem__)


def _run(tasks: List[Callable[[], MultitreeRow]], threads: Optional[int], progress: bool) -> List[MultitreeRow]:
    workers = settings.multitree_threads if threads is None else threads
    show = progress and sys.stderr.isatty()
    if workers <= 1:
        return [task() for task in tqdm(tasks, disable=not show, file=sys.stderr)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(tqdm(pool.map(lambda task: task(), tasks), total=len(tasks), disable=not show,
                         file=sys.stderr))


def _assignments(edge_tuple: EdgeTuple, paper_order: bool = False) -> List[EdgeAssignment]:
    rows = enumerate_incongruent(edge_tuple, paper_order=paper_order and edge_tuple.N == 3)
    if not rows:
        raise NoRealizableAssignment(f"no assignment of {edge_tuple.lengths} is realizable")
    return rows


def _report(edge_tuple: EdgeTuple, mode: TreeMode, weights: Tuple[float, ...], bst: Optional[float],
            rows: List[MultitreeRow]) -> MultitreeReport:
    report = MultitreeReport(
        tuple=edge_tuple, mode=mode, weights=weights, bst=bst, rows=tuple(rows),
        global_min_index=_global_min_index(rows, mode), max_volume_index=_max_volume_index(rows),
    )
    logger.info(
        "%s multitree: %d rows, global minimum %.6g at row %d, max volume at row %d",
        mode.value, len(rows), report.global_min.length(mode), report.global_min_index, report.max_volume_index,
    )
    return report


def build_multitree(edge_tuple: EdgeTuple, weights: Optional[Sequence[float]] = None, bst: Optional[float] = None,
                    mode: TreeMode = TreeMode.FERMAT, permute_weights: bool = False,
                    threads: Optional[int] = None, progress: bool = False,
                    paper_order: bool = False) -> MultitreeReport:
    """One optimal tree per incongruent realizable simplex of `edge_tuple`.

    Rows follow canonical-key order; `paper_order` relabels and re-sorts tetrahedra
    the way the multitetrahedron table lists them.
    """
    mode = TreeMode(mode)
    if mode is TreeMode.INTERMEDIATE:
        raise DomainError("use intermediate_multitree for intermediate topologies")
    w = _weights(weights, edge_tuple.N + 1)
    if mode is TreeMode.STEINER and (bst is None or bst <= 0):
        raise BadWeights("a positive Steiner weight bST is required")
    tasks = [
        (lambda a=assign, order=order: _solve_row(a, order, mode, bst, None))
        for assign in _assignments(edge_tuple, paper_order) for order in _weight_orders(w, permute_weights)
    ]
    return _report(edge_tuple, mode, w, bst, _run(tasks, threads, progress))


def intermediate_multitree(edge_tuple: EdgeTuple, weights: Optional[Sequence[float]], bst: float,
                           topology: SteinerTopology, threads: Optional[int] = None,
                           progress: bool = False) -> MultitreeReport:
    """Multitree with a fixed, possibly intermediate, topology on every simplex."""
    if topology.n_terminals != edge_tuple.N + 1:
        raise DimensionMismatch("topology terminal count must be N+1")
    if topology.n_steiner >= edge_tuple.N - 1:
        raise DomainError(f"an intermediate tree for N={edge_tuple.N} needs fewer than {edge_tuple.N - 1} mobile nodes")
    w = _weights(weights, edge_tuple.N + 1)
    tasks = [
        (lambda a=assign: _solve_row(a, w, TreeMode.INTERMEDIATE, bst, topology))
        for assign in _assignments(edge_tuple)
    ]
    rows = _run(tasks, threads, progress)
    unbalanced = [row.assignment.lengths for row in rows if "unbalanced" in row.steiner.flags]
    if unbalanced:
        logger.warning("%d of %d intermediate trees are unbalanced", len(unbalanced), len(rows))
    return _report(edge_tuple, TreeMode.INTERMEDIATE, w, bst, rows)


def max_volume_assignment(edge_tuple: EdgeTuple) -> EdgeAssignment:
    assignments = _assignments(edge_tuple)
    dets = [(cayley_menger_det(a.distance_matrix()), tuple(-v for v in a.canonical_key)) for a in assignments]
    return assignments[max(range(len(assignments)), key=dets.__getitem__)]


def _steiner_lengths(simplexes, weights: np.ndarray, bst: float) -> np.ndarray:
    out = []
    for simplex in simplexes:
        if simplex.N == 3:
            out.append(solve_steiner_tetrahedron(simplex, weights, bst).weighted_length)
        else:
            topology = SteinerTopology.caterpillar(simplex.N + 1)
            out.append(solve_steiner_topology(simplex.vertices, weights, bst, topology).weighted_length)
    return np.array(out)


def max_volume_is_minimal(simplexes, target: int, weights: np.ndarray, bst: float) -> bool:
    lengths = _steiner_lengths(simplexes, weights, bst)
    return bool(lengths[target] <= np.min(lengths) + 1e-9 * max(1.0, float(np.min(lengths))))


def most_natural(edge_tuple: EdgeTuple, weights: Optional[Sequence[float]] = None,
                 bst_grid: Optional[Sequence[float]] = None, tolerance: Optional[float] = None,
                 max_iterations: Optional[int] = None
                 ) -> Tuple[EdgeAssignment, Optional[Tuple[float, float]]]:
    """Max-volume assignment and the interval bracketing the largest bST keeping it globally minimal.

    The grid locates the last bST where the max-volume tree is minimal and the first
    one after it where it is not; bisection narrows that pair. None when no grid
    value makes it minimal.
    """
    if not edge_tuple.is_consecutive_integers():
        raise DomainError("most_natural needs consecutive integer lengths")
    start = hertog_consecutive_start() if edge_tuple.N == 3 else min_consecutive_integer_start(edge_tuple.N)
    if min(edge_tuple.lengths) < start:
        raise ThresholdViolation(f"consecutive tuples for N={edge_tuple.N} must start at {start} or above")
    tol = settings.bisection_tolerance if tolerance is None else tolerance
    limit = settings.bisection_max_iterations if max_iterations is None else max_iterations
    w = np.asarray(_weights(weights, edge_tuple.N + 1))

    assignments = _assignments(edge_tuple)
    best = max_volume_assignment(edge_tuple)
    target = next(k for k, a in enumerate(assignments) if a.canonical_key == best.canonical_key)
    simplexes = [embed_simplex(a) for a in assignments]

    upper = min(w[i] + w[j] for i, j in itertools.combinations(range(len(w)), 2))
    grid = np.linspace(upper / 16, upper * 15 / 16, 15) if bst_grid is None else np.asarray(bst_grid, dtype=float)
    grid = np.sort(grid[(grid > 0) & (grid < upper)])
    verdicts = [max_volume_is_minimal(simplexes, target, w, g) for g in grid]
    logger.info("max-volume minimality over the bST grid: %s", verdicts)
    if not any(verdicts):
        return best, None
    last = max(k for k, v in enumerate(verdicts) if v)
    if last == len(grid) - 1:
        return best, (float(grid[last]), float(upper))
    lo, hi = float(grid[last]), float(grid[last + 1])
    for _ in range(limit):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if max_volume_is_minimal(simplexes, target, w, mid):
            lo = mid
        else:
            hi = mid
    return best, (lo, hi)


class MultitreeService:

    def build(self, lengths: Sequence[float], weights, bst: Optional[float], mode: str,
              permute_weights: bool = False, paper_order: bool = False) -> MultitreeReport:
        return build_multitree(EdgeTuple.from_lengths(lengths), weights, bst, TreeMode(mode),
                               permute_weights=permute_weights, paper_order=paper_order)

    def most_natural(self, lengths: Sequence[float], weights=None, bst_grid=None):
        return most_natural(EdgeTuple.from_lengths(lengths), weights, bst_grid)


multitree_service = MultitreeService()
