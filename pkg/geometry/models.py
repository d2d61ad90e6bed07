from pydantic import BaseModel, Field
from typing import List, Optional, Union


class DistanceMatrixRequest(BaseModel):
    """Edge lengths of a simplex in (1,2), (1,3), ..., (n-1,n) order"""
    n: int = Field(..., ge=2, description="Number of vertices (N+1)")
    lengths: List[float] = Field(..., description="The n(n-1)/2 edge lengths")

    class Config:
        json_schema_extra = {
            "example": {
                "n": 4,
                "lengths": [12, 11, 9, 10, 8, 7]
            }
        }


class CayleyMengerResponse(BaseModel):
    """Bordered determinant and the volume factor it scales with"""
    determinant: Union[int, float] = Field(..., description="Cayley-Menger determinant, exact for integer lengths")
    dimension: int = Field(..., description="Simplex dimension N")
    volume_factor: int = Field(..., description="(-1)^(N+1) 2^N (N!)^2")

    class Config:
        json_schema_extra = {
            "example": {
                "determinant": 1994518,
                "dimension": 3,
                "volume_factor": 288
            }
        }


class VolumeResponse(BaseModel):
    """Volume and circumradius of a realizable simplex"""
    volume: float = Field(..., description="N-dimensional volume")
    circumradius: Optional[float] = Field(None, description="Radius of the circumscribed sphere")
    determinant: Union[int, float] = Field(..., description="Cayley-Menger determinant")

    class Config:
        json_schema_extra = {
            "example": {
                "volume": 83.2189,
                "circumradius": 6.59837,
                "determinant": 1994518
            }
        }
