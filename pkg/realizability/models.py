from pydantic import BaseModel, Field
from typing import List, Optional


class TupleRequest(BaseModel):
    """Multiset of N(N+1)/2 edge lengths"""
    lengths: List[float] = Field(..., description="Edge lengths; N is inferred from the count")

    class Config:
        json_schema_extra = {
            "example": {
                "lengths": [7, 8, 9, 10, 11, 12]
            }
        }


class EnumerateRequest(TupleRequest):
    """Enumeration options"""
    realizable_only: bool = Field(True, description="Drop assignments that are not Euclidean simplexes")
    paper_order: bool = Field(False, description="Tetrahedra only: relabel and sort in table order")


class CheckResponse(BaseModel):
    """Realizability counts and threshold verdicts for one tuple"""
    N: int = Field(..., description="Simplex dimension")
    lengths: List[float] = Field(..., description="Edge lengths, ascending")
    incongruent: int = Field(..., description="Relabeling classes")
    realizable: int = Field(..., description="Classes forming a Euclidean simplex")
    orbit_count: int = Field(..., description="Class count from Burnside's lemma")
    dekster_wilker_domain: bool = Field(..., description="Every length lies in the Dekster-Wilker domain")
    dekster_wilker_min_edge: float = Field(..., description="Smallest admissible edge for the maximum edge")
    consecutive_start: Optional[float] = Field(None, description="First length of a consecutive integer tuple")
    dekster_wilker_start: Optional[int] = Field(None, description="Smallest consecutive start guaranteed by Dekster-Wilker")
    dekster_wilker_verdict: Optional[bool] = Field(None, description="consecutive_start >= dekster_wilker_start")
    hertog_start: Optional[int] = Field(None, description="Tetrahedra: smallest consecutive start with every assignment realizable")
    hertog_verdict: Optional[bool] = Field(None, description="consecutive_start >= hertog_start")
    blumenthal_ratio: Optional[float] = Field(None, description="a/d when the squared lengths form a progression a, a+d, ...")
    blumenthal_threshold: Optional[float] = Field(None, description="Smallest ratio with every assignment realizable")
    blumenthal_verdict: Optional[bool] = Field(None, description="blumenthal_ratio >= blumenthal_threshold")

    class Config:
        json_schema_extra = {
            "example": {
                "N": 3,
                "lengths": [7, 8, 9, 10, 11, 12],
                "incongruent": 30,
                "realizable": 30,
                "orbit_count": 30,
                "dekster_wilker_domain": False,
                "dekster_wilker_min_edge": 8.485,
                "consecutive_start": 7,
                "dekster_wilker_start": 13,
                "dekster_wilker_verdict": False,
                "hertog_start": 7,
                "hertog_verdict": True
            }
        }


class AssignmentRow(BaseModel):
    """One incongruent assignment"""
    lengths: List[float] = Field(..., description="Lengths in (1,2), (1,3), ..., (N,N+1) order")
    columns: Optional[List[float]] = Field(None, description="Tetrahedra only: a12, a43, a13, a23, a24, a14")
    realizable: bool = Field(..., description="Whether the assignment is a Euclidean simplex")


class EnumerateResponse(BaseModel):
    """Incongruent assignments of a tuple"""
    count: int = Field(..., description="Number of returned assignments")
    rows: List[AssignmentRow] = Field(..., description="Assignments in canonical or table order")


class ThresholdsResponse(BaseModel):
    """Consecutive-length thresholds for one dimension"""
    N: int = Field(..., description="Simplex dimension")
    dekster_wilker_lambda: float = Field(..., description="lambda_N for a unit maximum edge")
    consecutive_start: float = Field(..., description="a(N): real start of the Dekster-Wilker guarantee")
    consecutive_integer_start: int = Field(..., description="Smallest integer start")
    hertog_root: Optional[float] = Field(None, description="Tetrahedra: root of the critical determinant")
    hertog_start: Optional[int] = Field(None, description="Tetrahedra: smallest integer start")
    blumenthal_ratio: Optional[float] = Field(None, description="Tetrahedra: square-root progression threshold")

    class Config:
        json_schema_extra = {
            "example": {
                "N": 3,
                "dekster_wilker_lambda": 0.7071,
                "consecutive_start": 12.07,
                "consecutive_integer_start": 13,
                "hertog_root": 6.095,
                "hertog_start": 7,
                "blumenthal_ratio": 1.915
            }
        }
