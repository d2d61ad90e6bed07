from pydantic import BaseModel, Field
from typing import List

Vector = List[float]
Matrix = List[List[float]]


class PointSet(BaseModel):
    points: Matrix = Field(..., description="One row of coordinates per point")


class WeightedPoints(PointSet):
    weights: Vector = Field(..., description="One nonnegative weight per point")


def as_list(array) -> list:
    """numpy arrays and scalars to plain JSON-ready lists and floats."""
    if hasattr(array, "tolist"):
        return array.tolist()
    return list(array)
