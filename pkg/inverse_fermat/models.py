from pydantic import BaseModel, Field
from typing import Dict, List, Literal, Optional, Tuple

from schemas.common import Matrix, Vector


class InverseRequest(BaseModel):
    """Simplex vertices and the point that should become the weighted Fermat point"""
    vertices: Matrix = Field(..., description="N+1 vertices in R^N")
    point: Vector = Field(..., description="Strictly interior target point")
    C: float = Field(1.0, gt=0, description="Prescribed sum of the weights")
    method: Literal["volume", "sine"] = Field("volume", description="Volume-ratio or sine-ratio formula")

    class Config:
        json_schema_extra = {
            "example": {
                "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
                "point": [0.2, 0.2, 0.2],
                "C": 1.0,
                "method": "volume"
            }
        }


class InverseResponse(BaseModel):
    """Weights that make the point optimal"""
    weights: Vector = Field(..., description="Positive weights summing to C")
    C: float = Field(..., description="Weight sum")
    residual: float = Field(..., description="Spread of B_i / (a_i Vol_i)")
    round_trip_error: Optional[float] = Field(None, description="Distance from the forward Fermat point to the target")


class PlasticityRequest(BaseModel):
    """Rays from a common Fermat point; rays past the first N+1 are drivers"""
    rays: Matrix = Field(..., description="At least N+2 nonzero rays in R^N")
    C: float = Field(1.0, gt=0, description="Weight sum of the base system")
    drivers: Optional[Vector] = Field(None, description="Driver weights to evaluate")

    class Config:
        json_schema_extra = {
            "example": {
                "rays": [[1, 0], [-0.5, 0.866], [-0.5, -0.866], [0.6, 0.8]],
                "C": 1.0,
                "drivers": [0.1]
            }
        }


class PlasticityResponse(BaseModel):
    """Affine weight system B_i = sum_j a_ij B_driver_j + b_i"""
    base: Vector = Field(..., description="Base weights b_i at zero drivers")
    coefficients: Matrix = Field(..., description="a_ij, one column per driver")
    base_ratios: Vector = Field(..., description="B_i / B_N of the base simplex")
    window: Tuple[Optional[float], Optional[float]] = Field(..., description="Nonnegativity range of the first driver")
    directions: List[int] = Field(..., description="Sign of each a_i for the first driver")
    last_base_weight_decreases: bool = Field(..., description="a_(N+1) < 0 for the first driver")
    weights: Optional[Vector] = Field(None, description="Full weight vector at the given drivers")


class MutationRequest(PlasticityRequest):
    """Plasticity system plus flow constraints"""
    k: int = Field(..., ge=1, description="Number of inflow rays")
    c: float = Field(..., gt=0, description="Total weight")
    storage: float = Field(0.0, description="Net inflow stored at the hub")


class MutationResponse(BaseModel):
    weights: Vector = Field(..., description="Nonnegative weights, base rays first")
    invariant: bool = Field(..., description="The Fermat point of the rays is unchanged")


class BesselRequest(PlasticityRequest):
    """Bessel-process driver path"""
    r0: float = Field(..., ge=0, description="Starting radius")
    m: int = Field(..., ge=2, description="Dimension parameter of the process")
    t_end: float = Field(..., gt=0, description="Final time")
    dt: float = Field(..., gt=0, description="Euler step")
    seed: int = Field(..., description="Random generator seed")
    c: float = Field(1.0, gt=0, description="Weight total after rescaling")
    noise: bool = Field(True, description="Disable to follow the drift only")


class BesselResponse(BaseModel):
    times: Vector
    values: Vector = Field(..., description="Driver path")
    weights: Matrix = Field(..., description="Weights per time step")
    admissible: List[bool] = Field(..., description="Every weight lies in [0, c]")
    violations: int = Field(..., description="Steps outside the admissible range")


class EpsilonRequest(BaseModel):
    """Point at distance eps from the last vertex toward the circumcenter"""
    vertices: Matrix = Field(..., description="N+1 vertices in R^N")
    eps: float = Field(..., gt=0, description="Distance from the last vertex")
    C: Optional[float] = Field(None, gt=0, description="Weight sum; N+1 by default")


class EpsilonResponse(BaseModel):
    point: Vector = Field(..., description="Target Fermat point")
    weights: Vector = Field(..., description="Sine-ratio weights")
    error_estimate: float = Field(..., description="| |sum_(i<=N) B_i u_i| - B_(N+1) |")
    eps: float


def window_pair(window) -> Tuple[Optional[float], Optional[float]]:
    """NaN and infinite bounds become null."""
    out = []
    for v in window:
        v = float(v)
        out.append(v if v == v and abs(v) != float("inf") else None)
    return out[0], out[1]


def diagnostics_document(diagnostics: Dict[str, object]) -> Dict[str, object]:
    return {
        "window": window_pair(diagnostics["window"]),
        "directions": diagnostics["directions"],
        "last_base_weight_decreases": diagnostics["last_base_weight_decreases"],
    }


def plasticity_document(model, drivers=None) -> PlasticityResponse:
    weights = None if drivers is None else model.weights(drivers).tolist()
    return PlasticityResponse(
        base=model.base.tolist(),
        coefficients=model.coefficients.tolist(),
        base_ratios=model.base_ratios.tolist(),
        weights=weights,
        **diagnostics_document(model.sign_diagnostics())
    )
