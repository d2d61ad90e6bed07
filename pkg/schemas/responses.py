from pydantic import BaseModel, Field
from typing import List, Literal, Optional, Tuple, Union


class HealthCheckResponse(BaseModel):
    """Response model for health check endpoint"""
    status: str = Field(..., description="Service health status")
    service: str = Field(..., description="Service name")
    version: str = Field(..., description="Service version")

    class Config:
        json_schema_extra = {
            "example": {
                "status": "healthy",
                "service": "multitree",
                "version": "1.0.0"
            }
        }


class RootResponse(BaseModel):
    """Response model for root endpoint"""
    message: str = Field(..., description="Welcome message")
    docs: str = Field(..., description="Documentation URL")
    health: str = Field(..., description="Health check URL")
    routers: List[str] = Field(default_factory=list, description="Mounted domain prefixes")

    class Config:
        json_schema_extra = {
            "example": {
                "message": "Fermat-Steiner-Frechet Multitree API",
                "docs": "/docs",
                "health": "/health",
                "routers": ["/geometry", "/realizability", "/fermat", "/inverse", "/steiner", "/multitree"]
            }
        }


class ErrorResponse(BaseModel):
    """Standard error response model"""
    detail: str = Field(..., description="Error message description")

    class Config:
        json_schema_extra = {
            "example": {
                "detail": "no assignment of the tuple is realizable"
            }
        }


class MultitreeConfig(BaseModel):
    """Inputs that produced a multitree document"""
    N: int = Field(..., description="Simplex dimension")
    lengths: List[float] = Field(..., description="Edge length multiset, ascending")
    weights: List[float] = Field(..., description="Terminal weights b1..b(N+1)")
    bst: Optional[float] = Field(None, description="Steiner edge weight")
    mode: Literal["fermat", "steiner", "intermediate"] = Field(..., description="Tree kind solved per row")
    permute_weights: bool = Field(False, description="Whether every weight permutation was evaluated")
    paper_order: bool = Field(False, description="Whether tetrahedra were listed in table order")

    class Config:
        extra = "forbid"


class MultitreeRowDocument(BaseModel):
    """One incongruent simplex and its optimal tree"""
    lengths: List[float] = Field(..., description="Edge lengths in (1,2), (1,3), ..., (N,N+1) order")
    columns: Optional[List[float]] = Field(None, description="Tetrahedra only: a12, a43, a13, a23, a24, a14")
    weights: List[float] = Field(..., description="Terminal weights used for this row")
    volume: float = Field(..., description="Simplex volume")
    circumradius: float = Field(..., description="Circumradius R")
    determinant: Union[int, float] = Field(..., description="Cayley-Menger determinant D, exact for integer lengths")
    fermat_length: float = Field(..., description="Weighted Fermat tree length (minf)")
    fermat_kind: str = Field(..., description="Floating or AbsorbedAt(k)")
    steiner_length: Optional[float] = Field(None, description="Weighted Steiner tree length")
    steiner_method: Optional[str] = Field(None, description="simpson, descent, fermat or star")
    steiner_flags: List[str] = Field(default_factory=list, description="Degeneracy and regime flags")

    class Config:
        extra = "forbid"


class MultitreeSummary(BaseModel):
    """Selections over the rows"""
    global_min_index: int = Field(..., description="Row with the smallest tree length")
    max_volume_index: int = Field(..., description="Row with the largest Cayley-Menger determinant")
    bst_bound: Optional[Tuple[float, float]] = Field(None, description="bST interval from the most natural search")

    class Config:
        extra = "forbid"


class MultitreeDocument(BaseModel):
    """Versioned multitree report"""
    schema_version: Literal[1] = Field(1, alias="schema", description="Document schema version")
    config: MultitreeConfig
    rows: List[MultitreeRowDocument]
    summary: MultitreeSummary

    class Config:
        extra = "forbid"
        populate_by_name = True
        json_schema_extra = {
            "example": {
                "schema": 1,
                "config": {"N": 3, "lengths": [7, 8, 9, 10, 11, 12], "weights": [1, 1, 1, 1],
                           "bst": None, "mode": "fermat", "permute_weights": False},
                "rows": [{
                    "lengths": [12, 11, 9, 10, 8, 7], "columns": [12, 7, 11, 10, 8, 9],
                    "weights": [1, 1, 1, 1], "volume": 83.21, "circumradius": 6.59837,
                    "determinant": 1994518, "fermat_length": 22.7838, "fermat_kind": "Floating",
                    "steiner_length": None, "steiner_method": None, "steiner_flags": []
                }],
                "summary": {"global_min_index": 0, "max_volume_index": 0, "bst_bound": None}
            }
        }
