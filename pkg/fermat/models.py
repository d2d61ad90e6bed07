from pydantic import BaseModel, Field
from typing import List, Optional

from schemas.common import Vector, WeightedPoints


class FermatRequest(WeightedPoints):
    """Terminals and weights of a weighted Fermat problem"""
    start: Optional[Vector] = Field(None, description="Starting point; the weighted centroid by default")

    class Config:
        json_schema_extra = {
            "example": {
                "points": [[0, 0], [4, 0], [0, 3]],
                "weights": [1, 1, 1]
            }
        }


class FermatResponse(BaseModel):
    """Weighted Fermat point and its classification"""
    point: Vector = Field(..., description="Minimizer of sum b_i |x - A_i|")
    objective: float = Field(..., description="Weighted tree length at the point")
    kind: str = Field(..., description="Floating or AbsorbedAt(k), k 1-based")
    vertex: Optional[int] = Field(None, description="1-based absorbing vertex")
    iterations: int = Field(..., description="Weiszfeld iterations used")
    gradient_residual: float = Field(..., description="Balance residual at the point")
    vertex_objectives: List[float] = Field(..., description="Objective evaluated at each terminal")

    class Config:
        json_schema_extra = {
            "example": {
                "point": [0.9, 0.7],
                "objective": 6.77,
                "kind": "Floating",
                "vertex": None,
                "iterations": 41,
                "gradient_residual": 1e-11,
                "vertex_objectives": [7.0, 9.0, 8.0]
            }
        }


def solution_document(solution, vertex_objectives: List[float]) -> FermatResponse:
    return FermatResponse(
        point=solution.point.tolist(),
        objective=solution.objective,
        kind=solution.label,
        vertex=None if solution.vertex is None else solution.vertex + 1,
        iterations=solution.iterations,
        gradient_residual=solution.gradient_residual,
        vertex_objectives=vertex_objectives
    )
