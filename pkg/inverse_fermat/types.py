from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class InverseSolution:
    """Positive weights with sum C that make a prescribed point the weighted Fermat point."""

    weights: np.ndarray
    C: float
    residual: float
    point: Optional[np.ndarray] = None
    round_trip_error: Optional[float] = None


@dataclass(frozen=True, eq=False)
class PlasticityModel:
    """Affine family B_i = sum_j a_ij B_driver_j + b_i keeping a Fermat point fixed.

    Rays 0..N form the base simplex; every further ray is a driver. `base_ratios[i]`
    is B_i / B_N of the base simplex and `driver_ratios[i, j]` is B_N / B_driver_j of
    the ray set that omits ray i.
    """

    rays: np.ndarray
    C: float
    base: np.ndarray
    coefficients: np.ndarray
    driver_indices: Tuple[int, ...]
    base_ratios: np.ndarray
    driver_ratios: np.ndarray

    @property
    def N(self) -> int:
        return self.rays.shape[1]

    @property
    def driver_count(self) -> int:
        return len(self.driver_indices)

    def weights(self, drivers) -> np.ndarray:
        """Full weight vector (base rays first, then drivers) for the given driver weights."""
        t = np.atleast_1d(np.asarray(drivers, dtype=float))
        if t.shape != (self.driver_count,):
            raise ValueError(f"expected {self.driver_count} driver weights")
        return np.concatenate([self.base + self.coefficients @ t, t])

    def driver_window(self, driver: int = 0) -> Tuple[float, float]:
        """Range of one driver weight (others at zero) keeping every weight nonnegative."""
        a = self.coefficients[:, driver]
        lo, hi = 0.0, np.inf
        for ai, bi in zip(a, self.base):
            if ai > 0:
                lo = max(lo, -bi / ai)
            elif ai < 0:
                hi = min(hi, bi / -ai)
            elif bi < 0:
                return (np.nan, np.nan)
        return (lo, hi) if lo <= hi else (np.nan, np.nan)

    def sign_diagnostics(self, driver: int = 0) -> Dict[str, object]:
        """Predicted direction of each dependent weight when the driver grows."""
        a = self.coefficients[:, driver]
        return {
            "last_base_weight_decreases": bool(a[-1] < 0),
            "directions": [int(np.sign(v)) for v in a],
            "window": self.driver_window(driver),
        }


@dataclass(frozen=True, eq=False)
class BesselPath:
    times: np.ndarray
    values: np.ndarray
    m: int
    seed: int
    r0: float
    noise: bool = True


@dataclass(frozen=True, eq=False)
class PlasticityTrajectory:
    times: np.ndarray
    weights: np.ndarray
    admissible: np.ndarray
    c: float

    @property
    def violations(self) -> int:
        return int(np.count_nonzero(~self.admissible))


@dataclass(frozen=True, eq=False)
class EpsilonApproximation:
    point: np.ndarray
    weights: InverseSolution
    error_estimate: float
    eps: float
