from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from fermat.types import FermatSolution
from realizability.types import EdgeAssignment, EdgeTuple
from steiner.types import SteinerTree


class TreeMode(str, Enum):
    FERMAT = "fermat"
    STEINER = "steiner"
    INTERMEDIATE = "intermediate"


@dataclass(frozen=True, eq=False)
class MultitreeRow:
    assignment: EdgeAssignment
    weights: Tuple[float, ...]
    volume: float
    circumradius: float
    determinant: object
    fermat: Optional[FermatSolution] = None
    steiner: Optional[SteinerTree] = None

    @property
    def fermat_length(self) -> Optional[float]:
        return None if self.fermat is None else float(self.fermat.objective)

    @property
    def steiner_length(self) -> Optional[float]:
        return None if self.steiner is None else float(self.steiner.weighted_length)

    def length(self, mode: TreeMode) -> float:
        if mode is TreeMode.FERMAT:
            return self.fermat_length
        return self.steiner_length


@dataclass(frozen=True, eq=False)
class MultitreeReport:
    """Optimal trees over every incongruent realizable simplex of one edge tuple."""

    tuple: EdgeTuple
    mode: TreeMode
    weights: Tuple[float, ...]
    bst: Optional[float]
    rows: Tuple[MultitreeRow, ...]
    global_min_index: int
    max_volume_index: int
    bst_bound: Optional[Tuple[float, float]] = None

    @property
    def lengths(self) -> np.ndarray:
        return np.array([row.length(self.mode) for row in self.rows])

    @property
    def global_min(self) -> MultitreeRow:
        return self.rows[self.global_min_index]

    @property
    def max_volume(self) -> MultitreeRow:
        return self.rows[self.max_volume_index]

    @property
    def max_volume_is_global_min(self) -> bool:
        return self.global_min_index == self.max_volume_index


@dataclass(frozen=True, eq=False)
class LagrangianSystem:
    """Constraint values and multipliers of a converged two-node tree.

    `multipliers[0]` belongs to the objective and is fixed to 1.
    """

    names: Tuple[str, ...]
    variables: np.ndarray
    objective: float
    constraints: np.ndarray
    multipliers: np.ndarray
    gradient: np.ndarray
    stationarity_residual: float
    gradient_scale: float
    condition_number: float
    dropped: Tuple[int, ...] = ()

    @property
    def max_constraint_residual(self) -> float:
        return float(np.max(np.abs(self.constraints)))
