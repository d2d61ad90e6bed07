import math
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence

from scipy import optimize

from core.config import settings
from core.errors import BracketFailure, DomainError
from core.logging import get_logger
from geometry.service import cayley_menger_det, is_nonnegative_det, volume_factor
from realizability.enumerator import canonical_rank_rows, count_incongruent, vertex_permutations
from realizability.types import EdgeAssignment, EdgeTuple, canonical_key, edge_pairs

logger = get_logger(__name__)


def is_realizable(assign: EdgeAssignment) -> bool:
    """True when the assignment is the edge set of a Euclidean N-simplex."""
    dm = assign.distance_matrix()
    n = dm.n
    d = dm.d
    for i, j, k in combinations(range(n), 3):
        a, b, c = d[i, j], d[j, k], d[i, k]
        if not (a + b > c and b + c > a and a + c > b):
            return False
    for size in range(4, n):
        for face in combinations(range(n), size):
            sub = dm.sub(face)
            if cayley_menger_det(sub) * volume_factor(size - 1) <= 0:
                return False
    if n >= 4:
        return is_nonnegative_det(dm)
    return True


def _table_representative(assign: EdgeAssignment) -> EdgeAssignment:
    """Labeling with the largest a12, then the largest a13 adjacent to it."""
    best = None
    best_rank = None
    for perm in vertex_permutations(4):
        candidate = assign.relabeled([int(v) for v in perm])
        a12, a43, a13, a23, a24, a14 = candidate.paper_columns()
        rank = (a12, a13, a43, a23, a24, a14)
        if best_rank is None or rank > best_rank:
            best, best_rank = candidate, rank
    return best


def to_paper_order(assignments: Sequence[EdgeAssignment]) -> List[EdgeAssignment]:
    """Tetrahedra relabeled and sorted the way the multitetrahedron table lists them."""
    reps = [_table_representative(a) for a in assignments]

    def sort_key(a: EdgeAssignment):
        a12, a43, a13, a23, a24, a14 = a.paper_columns()
        return (-a12, a43, -a13, -a23, -a24, -a14)

    return sorted(reps, key=sort_key)


def enumerate_incongruent(edge_tuple: EdgeTuple, realizable_only: bool = True,
                          paper_order: bool = False) -> List[EdgeAssignment]:
    """One assignment per relabeling class, in canonical-key order."""
    if edge_tuple.N < 2:
        raise DomainError("enumeration needs N >= 2")
    if paper_order and edge_tuple.N != 3:
        raise DomainError("table order is defined for tetrahedra only")
    rows, values = canonical_rank_rows(edge_tuple)
    out = []
    for row in rows:
        lengths = tuple(float(values[k]) for k in row)
        assign = EdgeAssignment(tuple=edge_tuple, lengths=lengths, canonical_key=lengths)
        if realizable_only and not is_realizable(assign):
            continue
        out.append(assign)
    logger.info(
        "N=%d tuple: %d incongruent classes, %d returned", edge_tuple.N, len(rows), len(out)
    )
    if paper_order:
        return to_paper_order(out)
    return out


def dekster_wilker_min_edge(N: int, ell: float) -> float:
    """Smallest edge that keeps every assignment with maximal edge ell realizable."""
    if N < 2:
        raise DomainError("N must be at least 2")
    if ell <= 0:
        raise DomainError("ell must be positive")
    if N % 2 == 0:
        return ell * math.sqrt(1.0 - 2.0 * (N + 1) / (N * (N + 2)))
    return ell * math.sqrt(1.0 - 2.0 / (N + 1))


def in_dekster_wilker_domain(edge_tuple: EdgeTuple) -> bool:
    ell = max(edge_tuple.lengths)
    return min(edge_tuple.lengths) >= dekster_wilker_min_edge(edge_tuple.N, ell)


def min_consecutive_start(N: int) -> float:
    """a(N): consecutive integers a, ..., a+m-1 lie in the Dekster-Wilker domain for a >= a(N)."""
    lam = dekster_wilker_min_edge(N, 1.0)
    m = N * (N + 1) // 2
    return (m - 1) * lam / (1.0 - lam)


def min_consecutive_integer_start(N: int) -> int:
    return math.ceil(min_consecutive_start(N) - 1e-12)


def hertog_critical_assignment(x: float) -> EdgeAssignment:
    """The tetrahedron a12=x+5, a34=x+4, a13=x+3, a24=x, a23=x+2, a14=x+1."""
    return EdgeAssignment.from_edge_map(
        {(1, 2): x + 5, (3, 4): x + 4, (1, 3): x + 3, (2, 4): x, (2, 3): x + 2, (1, 4): x + 1}
    )


def hertog_determinant(x: float) -> float:
    return float(cayley_menger_det(hertog_critical_assignment(x).distance_matrix()))


@lru_cache(maxsize=None)
def hertog_consecutive_root(lo: float = 6.0, hi: float = 7.0) -> float:
    """Root of the critical Cayley-Menger determinant for six consecutive lengths."""
    f_lo, f_hi = hertog_determinant(lo), hertog_determinant(hi)
    if f_lo * f_hi > 0:
        raise BracketFailure(f"determinant keeps its sign on [{lo}, {hi}]")
    root = optimize.bisect(hertog_determinant, lo, hi, xtol=settings.bisection_tolerance * 1e-3)
    logger.debug("critical consecutive root %.9f", root)
    return float(root)


def hertog_consecutive_start() -> int:
    return math.ceil(hertog_consecutive_root())


def _rank_classes(N: int) -> List[tuple]:
    rows, _ = canonical_rank_rows(EdgeTuple.consecutive(1.0, N))
    return [tuple(int(k) for k in row) for row in rows]


def is_complete(lengths: Sequence[float], N: int = 3, classes: Optional[List[tuple]] = None) -> bool:
    """Every relabeling class of distinct lengths is realizable."""
    edge_tuple = EdgeTuple(N=N, lengths=tuple(lengths))
    values = edge_tuple.lengths
    classes = classes if classes is not None else _rank_classes(N)
    for row in classes:
        lengths_row = tuple(values[k] for k in row)
        assign = EdgeAssignment(tuple=edge_tuple, lengths=lengths_row, canonical_key=lengths_row)
        if not is_realizable(assign):
            return False
    return True


def blumenthal_sextuple(ratio: float) -> List[float]:
    return [math.sqrt(ratio + n) for n in range(6)]


@lru_cache(maxsize=None)
def blumenthal_ratio_threshold(lo: float = 1.0, hi: float = 4.0) -> float:
    """Smallest a/d for which the square roots of a, a+d, ..., a+5d are complete."""
    classes = _rank_classes(3)
    complete_lo = is_complete(blumenthal_sextuple(lo), classes=classes)
    complete_hi = is_complete(blumenthal_sextuple(hi), classes=classes)
    if complete_lo or not complete_hi:
        raise BracketFailure(f"completeness does not change on [{lo}, {hi}]")
    tol = settings.bisection_tolerance
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if is_complete(blumenthal_sextuple(mid), classes=classes):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def blumenthal_ratio(edge_tuple: EdgeTuple) -> Optional[float]:
    """a/d when the squared lengths are a, a+d, ..., a+5d with d > 0, else None."""
    squares = [v * v for v in edge_tuple.lengths]
    d = squares[1] - squares[0]
    if d <= 0:
        return None
    if any(abs((s1 - s0) - d) > 1e-9 * s1 for s0, s1 in zip(squares, squares[1:])):
        return None
    return squares[0] / d


class RealizabilityService:

    def check(self, edge_tuple: EdgeTuple) -> Dict[str, object]:
        """Counts and threshold verdicts for one tuple."""
        classes = enumerate_incongruent(edge_tuple, realizable_only=False)
        realizable = [a for a in classes if is_realizable(a)]
        report: Dict[str, object] = {
            "N": edge_tuple.N,
            "lengths": list(edge_tuple.lengths),
            "incongruent": len(classes),
            "realizable": len(realizable),
            "orbit_count": count_incongruent(edge_tuple),
            "dekster_wilker_domain": in_dekster_wilker_domain(edge_tuple),
            "dekster_wilker_min_edge": dekster_wilker_min_edge(edge_tuple.N, max(edge_tuple.lengths)),
        }
        if edge_tuple.is_consecutive_integers():
            start = edge_tuple.lengths[0]
            report["consecutive_start"] = start
            report["dekster_wilker_start"] = min_consecutive_integer_start(edge_tuple.N)
            report["dekster_wilker_verdict"] = start >= report["dekster_wilker_start"]
            if edge_tuple.N == 3:
                report["hertog_start"] = hertog_consecutive_start()
                report["hertog_verdict"] = start >= report["hertog_start"]
        ratio = blumenthal_ratio(edge_tuple) if edge_tuple.N == 3 else None
        if ratio is not None:
            report["blumenthal_ratio"] = ratio
            report["blumenthal_threshold"] = blumenthal_ratio_threshold()
            report["blumenthal_verdict"] = ratio >= report["blumenthal_threshold"]
        return report

    def canonical(self, assign: EdgeAssignment) -> tuple:
        return canonical_key(assign.lengths, assign.N)


realizability_service = RealizabilityService()
