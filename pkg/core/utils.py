import math
from typing import Iterable, List, Sequence

import numpy as np

from core.errors import BadWeights, DimensionMismatch


def as_points(points: Sequence[Sequence[float]]) -> np.ndarray:
    """Coerce a sequence of coordinates to a float (m, N) array."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty (m, N) array of points, got shape {arr.shape}")
    return arr


def as_weights(weights: Iterable[float], count: int) -> np.ndarray:
    arr = np.asarray(list(weights), dtype=float)
    if arr.shape != (count,):
        raise DimensionMismatch(f"expected {count} weights, got {arr.size}")
    if np.any(~np.isfinite(arr)) or np.any(arr < 0):
        raise BadWeights("weights must be finite and nonnegative")
    if np.count_nonzero(arr > 0) < 2:
        raise BadWeights("at least two weights must be strictly positive")
    return arr


def unit_vector(v: np.ndarray) -> np.ndarray:
    n = float(np.linalg.norm(v))
    if n == 0.0:
        return np.zeros_like(v, dtype=float)
    return v / n


def unit_vectors_from(origin: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Rows u(origin, P_j); zero rows where a point coincides with the origin."""
    diff = points - origin
    norms = np.linalg.norm(diff, axis=1)
    out = np.zeros_like(diff)
    mask = norms > 0
    out[mask] = diff[mask] / norms[mask, None]
    return out


def clamp_cos(value: float) -> float:
    return max(-1.0, min(1.0, value))


def format_sig(value: float, digits: int = 6) -> str:
    """Fixed significant-digit rendering used by the CSV writer."""
    if not math.isfinite(value):
        return repr(float(value))
    return f"{value:.{digits}g}"


def parse_number_list(text: str) -> List[float]:
    """Parse `7,8,9` or the inclusive integer range form `7..12`."""
    text = text.strip()
    if ".." in text and "," not in text:
        lo, hi = text.split("..", 1)
        start, stop = int(lo), int(hi)
        if stop < start:
            raise ValueError(f"empty range {text!r}")
        return [float(v) for v in range(start, stop + 1)]
    return [float(part) for part in text.split(",") if part.strip()]
