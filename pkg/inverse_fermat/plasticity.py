"""Dynamic plasticity and (m, k) mutation weight systems.

With more than N+1 rays at a fixed Fermat point A0 the balance condition leaves
free directions: every extra (driver) weight can be chosen and the N+1 base
weights follow affinely, B_i = sum_j a_ij B_j + b_i, with the total kept at C.
"""
from typing import Optional, Sequence

import numpy as np
from scipy import optimize

from core.errors import BadWeights, DegenerateSubSimplex, DegenerateSubset, DimensionMismatch, DomainError, Infeasible
from core.logging import get_logger
from inverse_fermat.service import hyperplane_normal
from inverse_fermat.types import PlasticityModel

logger = get_logger(__name__)

_PROJECTION_FLOOR = 1e-12


def _unit_rays(rays) -> np.ndarray:
    r = np.asarray(rays, dtype=float)
    if r.ndim != 2:
        raise DimensionMismatch("rays must be an (count, N) array")
    norms = np.linalg.norm(r, axis=1)
    if np.any(norms <= 0):
        raise DegenerateSubset("zero-length ray")
    return r / norms[:, None]


def _projections(rays: np.ndarray, i: int) -> np.ndarray:
    """Signed projections on the normal of the base rays other than i and N.

    The normal is oriented so that ray N projects positively.
    """
    N = rays.shape[1]
    keep = [j for j in range(N + 1) if j not in (i, N)]
    if keep:
        try:
            n = hyperplane_normal(rays[keep], N)
        except DegenerateSubSimplex as exc:
            raise DegenerateSubset(f"rays {keep} do not span a hyperplane") from exc
    else:
        # N == 1 has no other rays: the whole line is the normal direction
        n = np.ones(1)
    if n @ rays[N] < 0:
        n = -n
    return n @ rays.T


def _driver_column(rays: np.ndarray, driver: int, C: float):
    N = rays.shape[1]
    r = np.empty(N + 1)
    q = np.empty(N)
    r[N] = 1.0
    for i in range(N):
        s = _projections(rays, i)
        if abs(s[i]) <= _PROJECTION_FLOOR or abs(s[N]) <= _PROJECTION_FLOOR:
            raise DegenerateSubset(f"ray subset without ray {i} is degenerate")
        r[i] = -s[N] / s[i]
        q[i] = -s[driver] / s[N]
    total = r.sum()
    if abs(total) <= _PROJECTION_FLOOR:
        raise DegenerateSubset("base rays do not determine the weights")
    a_last = (float(r[:N] @ q) - 1.0) / total
    b_last = C / total
    a = np.empty(N + 1)
    b = np.empty(N + 1)
    a[N], b[N] = a_last, b_last
    a[:N] = r[:N] * a_last - r[:N] * q
    b[:N] = r[:N] * b_last
    return a, b, r, q


def plasticity_general(rays, C: float = 1.0, base: Optional[Sequence[int]] = None) -> PlasticityModel:
    """Affine weight system for m+1 rays; rays outside `base` are drivers.

    `base` lists the N+1 rays of the base simplex (default: the first N+1).
    """
    r = _unit_rays(rays)
    count, N = r.shape
    if count < N + 2:
        raise DimensionMismatch(f"at least {N + 2} rays are needed in R^{N}")
    if C <= 0:
        raise DomainError("C must be positive")
    base_idx = list(range(N + 1)) if base is None else list(base)
    if len(base_idx) != N + 1 or len(set(base_idx)) != N + 1:
        raise DimensionMismatch(f"the base must list {N + 1} distinct rays")
    drivers = [j for j in range(count) if j not in base_idx]
    ordered = r[base_idx + drivers]

    coefficients = np.empty((N + 1, len(drivers)))
    ratios = np.empty((N, len(drivers)))
    b = r_base = None
    for col, _ in enumerate(drivers):
        subset = np.vstack([ordered[:N + 1], ordered[N + 1 + col]])
        a, b_col, r_col, q_col = _driver_column(subset, N + 1, C)
        coefficients[:, col] = a
        ratios[:, col] = q_col
        b, r_base = b_col, r_col
    model = PlasticityModel(
        rays=ordered, C=C, base=b, coefficients=coefficients,
        driver_indices=tuple(range(N + 1, count)), base_ratios=r_base, driver_ratios=ratios,
    )
    if np.any(coefficients[N] >= 0):
        logger.info("last base weight does not decrease with every driver: %s", coefficients[N])
    return model


def plasticity_coefficients(rays, C: float = 1.0, base_weights: Optional[Sequence[float]] = None) -> PlasticityModel:
    """Affine weight system for N+2 rays with the last ray as the driver."""
    r = _unit_rays(rays)
    if r.shape[0] != r.shape[1] + 2:
        raise DimensionMismatch("exactly N+2 rays are expected")
    model = plasticity_general(r, C)
    if base_weights is not None:
        given = np.asarray(base_weights, dtype=float)
        if given.shape != model.base.shape:
            raise DimensionMismatch("base weights must cover the N+1 base rays")
        given = C * given / given.sum()
        if np.max(np.abs(given - model.base)) > 1e-8 * C:
            raise BadWeights("base weights do not balance the base rays")
    return model


def mutation_system(model: PlasticityModel, k: int, c: float, storage: float):
    """Linear system (A, rhs) in all m+1 weights: affine plasticity, flow and total."""
    n_base = model.N + 1
    total = n_base + model.driver_count
    if not 1 <= k <= total - 1:
        raise DomainError(f"inflow count k must lie in [1, {total - 1}]")
    rows, rhs = [], []
    scale = c / model.C
    for i in range(n_base):
        row = np.zeros(total)
        row[i] = 1.0
        row[n_base:] = -model.coefficients[i]
        rows.append(row)
        rhs.append(model.base[i] * scale)
    flow = np.where(np.arange(total) < k, 1.0, -1.0)
    rows.append(flow)
    rhs.append(storage)
    rows.append(np.ones(total))
    rhs.append(c)
    return np.array(rows), np.array(rhs)


def mutation_weights(model: PlasticityModel, k: int, c: float, storage: float = 0.0) -> np.ndarray:
    """Weights keeping the Fermat point with k inflow rays, total c and storage at the hub."""
    A, rhs = mutation_system(model, k, c, storage)
    x, *_ = np.linalg.lstsq(A, rhs, rcond=None)
    if np.linalg.norm(A @ x - rhs) > 1e-10 * max(1.0, abs(c)):
        raise Infeasible("flow constraints contradict the plasticity system")
    if np.min(x) < -1e-12 * max(1.0, abs(c)):
        res = optimize.linprog(np.zeros(A.shape[1]), A_eq=A, b_eq=rhs, bounds=[(0, None)] * A.shape[1],
                               method="highs")
        if res.status != 0:
            raise Infeasible("no nonnegative weights satisfy the flow constraints")
        x = res.x
    return np.clip(x, 0.0, None)


class PlasticityService:

    def model(self, rays, C: float) -> PlasticityModel:
        r = np.asarray(rays, dtype=float)
        if r.shape[0] == r.shape[1] + 2:
            return plasticity_coefficients(r, C)
        return plasticity_general(r, C)


plasticity_service = PlasticityService()
