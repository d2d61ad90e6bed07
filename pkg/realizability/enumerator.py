"""Orbit enumeration of edge assignments under vertex relabeling."""
import math
from collections import Counter
from functools import lru_cache
from itertools import chain, permutations
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from core.config import settings
from core.errors import CombinatorialLimit
from core.logging import get_logger
from realizability.types import EdgeTuple, edge_pairs

logger = get_logger(__name__)

# rows of arrangements scanned per vectorized block
_CHUNK = 2048
# beyond this many raw arrangements the brute-force scan is refused
_MAX_ARRANGEMENTS = 4_000_000


@lru_cache(maxsize=None)
def vertex_permutations(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int8)


@lru_cache(maxsize=None)
def edge_permutations(n: int) -> np.ndarray:
    """For each vertex permutation s, the edge index that lands on each edge slot."""
    pairs = edge_pairs(n)
    index = {p: k for k, p in enumerate(pairs)}
    perms = vertex_permutations(n)
    out = np.empty((len(perms), len(pairs)), dtype=np.int16)
    for r, perm in enumerate(perms):
        for k, (i, j) in enumerate(pairs):
            a, b = int(perm[i]), int(perm[j])
            out[r, k] = index[(a, b) if a < b else (b, a)]
    return out


def _edge_cycle_lengths(perm: Sequence[int], n: int) -> List[int]:
    pairs = edge_pairs(n)
    index = {p: k for k, p in enumerate(pairs)}
    image = []
    for i, j in pairs:
        a, b = perm[i], perm[j]
        image.append(index[(a, b) if a < b else (b, a)])
    seen = [False] * len(pairs)
    lengths = []
    for start in range(len(pairs)):
        if seen[start]:
            continue
        size, k = 0, start
        while not seen[k]:
            seen[k] = True
            k = image[k]
            size += 1
        lengths.append(size)
    return lengths


def count_incongruent(edge_tuple: EdgeTuple) -> int:
    """Number of relabeling classes by Burnside's lemma.

    An assignment is fixed by a permutation exactly when each edge cycle carries a
    single length, so the fixed count is the number of ways to colour the cycles
    with the tuple's multiplicities.
    """
    n = edge_tuple.N + 1
    multiplicities = tuple(sorted(Counter(edge_tuple.lengths).values()))
    cycle_types = Counter(
        tuple(sorted(_edge_cycle_lengths(tuple(int(v) for v in p), n)))
        for p in vertex_permutations(n)
    )

    def fixed(cycles: Tuple[int, ...]) -> int:
        @lru_cache(maxsize=None)
        def ways(k: int, remaining: Tuple[int, ...]) -> int:
            if k == len(cycles):
                return 1 if not any(remaining) else 0
            total = 0
            for idx, left in enumerate(remaining):
                if left >= cycles[k]:
                    nxt = list(remaining)
                    nxt[idx] -= cycles[k]
                    total += ways(k + 1, tuple(nxt))
            return total

        return ways(0, multiplicities)

    total = sum(count * fixed(cycles) for cycles, count in cycle_types.items())
    return total // math.factorial(n)


def arrangement_count(edge_tuple: EdgeTuple) -> int:
    counts = Counter(edge_tuple.lengths).values()
    total = math.factorial(edge_tuple.m)
    for c in counts:
        total //= math.factorial(c)
    return total


def _multiset_arrangements(counts: List[int]) -> Iterator[Tuple[int, ...]]:
    m = sum(counts)
    current: List[int] = []

    def rec():
        if len(current) == m:
            yield tuple(current)
            return
        for value, left in enumerate(counts):
            if left:
                counts[value] -= 1
                current.append(value)
                yield from rec()
                current.pop()
                counts[value] += 1

    yield from rec()


def _arrangements(ranks_count: List[int], m: int) -> np.ndarray:
    total = math.factorial(m)
    for c in ranks_count:
        total //= math.factorial(c)
    if all(c == 1 for c in ranks_count):
        source = chain.from_iterable(permutations(range(m)))
    else:
        source = chain.from_iterable(_multiset_arrangements(list(ranks_count)))
    flat = np.fromiter(source, dtype=np.int8, count=total * m)
    return flat.reshape(total, m)


def canonical_rank_rows(edge_tuple: EdgeTuple) -> Tuple[np.ndarray, np.ndarray]:
    """Canonical rank vectors (one per class, ascending) and the distinct values they index."""
    classes = count_incongruent(edge_tuple)
    if classes > settings.enumeration_cap:
        raise CombinatorialLimit(
            f"{classes} incongruent classes exceed the enumeration cap of {settings.enumeration_cap}"
        )
    raw = arrangement_count(edge_tuple)
    m = edge_tuple.m
    if raw > _MAX_ARRANGEMENTS or m > 15:
        raise CombinatorialLimit(f"{raw} raw arrangements are too many to scan")

    values, counts = np.unique(np.asarray(edge_tuple.lengths), return_counts=True)
    rows = _arrangements(list(int(c) for c in counts), m)
    n = edge_tuple.N + 1
    eperm = edge_permutations(n).astype(np.intp)
    powers = (len(values) ** np.arange(m - 1, -1, -1)).astype(np.int64)

    kept = []
    for start in range(0, len(rows), _CHUNK):
        block = rows[start:start + _CHUNK].astype(np.int64)
        own = block @ powers
        images = block[:, eperm] @ powers  # (rows, perms)
        kept.append(block[own <= images.min(axis=1)])
    canonical = np.concatenate(kept) if kept else np.empty((0, m), dtype=np.int64)
    order = np.argsort(canonical @ powers, kind="stable")
    canonical = canonical[order]
    logger.debug("enumerated %d classes for N=%d (%d raw arrangements)", len(canonical), edge_tuple.N, raw)
    return canonical, values
