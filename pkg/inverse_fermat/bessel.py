import math

import numpy as np

from core.errors import DomainError
from core.logging import get_logger
from inverse_fermat.types import BesselPath, PlasticityModel, PlasticityTrajectory

logger = get_logger(__name__)


def bessel_path(r0: float, m: int, t_end: float, dt: float, seed: int, noise: bool = True) -> BesselPath:
    """Path of dr = dW + (m-1)/(2r) dt, stepped on r^2.

    Each step moves r by the Brownian increment, squares it, and adds (m-1)*dt,
    the exact flow of the drift on r^2, and keeps r above 1e-8 * max(r0, sqrt(t_end)).
    Without noise r(t)^2 = r0^2 + (m-1)t holds exactly.
    """
    if r0 < 0:
        raise DomainError("r0 must be nonnegative")
    if dt <= 0 or t_end <= 0:
        raise DomainError("dt and t_end must be positive")
    if m < 2:
        raise DomainError("the dimension parameter m must be at least 2")
    steps = max(1, math.ceil(t_end / dt - 1e-9))
    times = np.minimum(np.arange(steps + 1) * dt, t_end)
    increments = np.diff(times)
    rng = np.random.default_rng(seed)
    shocks = rng.standard_normal(steps) if noise else np.zeros(steps)
    floor = 1e-8 * max(r0, math.sqrt(t_end))

    values = np.empty(steps + 1)
    values[0] = r0
    r = r0
    for k in range(steps):
        h = increments[k]
        r = max(math.sqrt((r + math.sqrt(h) * shocks[k]) ** 2 + (m - 1) * h), floor)
        values[k + 1] = r
    return BesselPath(times=times, values=values, m=m, seed=seed, r0=r0, noise=noise)


def bessel_plasticity(model: PlasticityModel, path: BesselPath, c: float,
                      driver: int = 0) -> PlasticityTrajectory:
    """Weights along a Bessel path used as one driver weight, rescaled to total c.

    Time steps where some weight leaves [0, c] are flagged, not dropped.
    """
    if c <= 0:
        raise DomainError("c must be positive")
    drivers = np.zeros(model.driver_count)
    rows = []
    for value in path.values:
        drivers[:] = 0.0
        drivers[driver] = value
        rows.append(model.weights(drivers) * (c / model.C))
    weights = np.array(rows)
    slack = 1e-12 * c
    admissible = np.all((weights >= -slack) & (weights <= c + slack), axis=1)
    if not admissible.all():
        logger.info("%d of %d Bessel steps leave the admissible weight range",
                    int((~admissible).sum()), len(admissible))
    return PlasticityTrajectory(times=path.times, weights=weights, admissible=admissible, c=c)
