from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from core.errors import BadWeights


class FermatKind(str, Enum):
    FLOATING = "floating"
    ABSORBED = "absorbed"


@dataclass(frozen=True)
class WeightVector:
    """Terminal weights b_i and the optional Steiner-edge weight b_ST."""

    b: tuple
    b_st: Optional[float] = None

    def __post_init__(self):
        b = tuple(float(v) for v in self.b)
        if any(v < 0 or not np.isfinite(v) for v in b):
            raise BadWeights("weights must be finite and nonnegative")
        if sum(1 for v in b if v > 0) < 2:
            raise BadWeights("at least two weights must be strictly positive")
        if self.b_st is not None and not self.b_st > 0:
            raise BadWeights("the Steiner-edge weight must be positive")
        object.__setattr__(self, "b", b)

    @classmethod
    def of(cls, values: Sequence[float], b_st: Optional[float] = None) -> "WeightVector":
        return cls(b=tuple(values), b_st=b_st)

    @classmethod
    def unit(cls, count: int, b_st: Optional[float] = None) -> "WeightVector":
        return cls(b=(1.0,) * count, b_st=b_st)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.b, dtype=float)

    def __len__(self) -> int:
        return len(self.b)


@dataclass(frozen=True, eq=False)
class FermatSolution:
    point: np.ndarray
    objective: float
    kind: FermatKind
    iterations: int
    gradient_residual: float
    vertex: Optional[int] = None

    @property
    def is_floating(self) -> bool:
        return self.kind is FermatKind.FLOATING

    @property
    def label(self) -> str:
        if self.kind is FermatKind.ABSORBED:
            return f"AbsorbedAt({self.vertex + 1})"
        return "Floating"
