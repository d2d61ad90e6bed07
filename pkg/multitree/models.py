from pydantic import BaseModel, Field
from typing import List, Literal, Optional, Tuple

from multitree.types import MultitreeReport, MultitreeRow
from schemas.responses import (MultitreeConfig, MultitreeDocument, MultitreeRowDocument,
                               MultitreeSummary)


class MultitreeRequest(BaseModel):
    """Edge tuple and weights for a multitree"""
    lengths: List[float] = Field(..., description="N(N+1)/2 edge lengths")
    weights: Optional[List[float]] = Field(None, description="Terminal weights; unit weights by default")
    bst: Optional[float] = Field(None, gt=0, description="Steiner-edge weight, required for steiner mode")
    mode: Literal["fermat", "steiner"] = Field("fermat", description="Tree kind solved on every simplex")
    permute_weights: bool = Field(False, description="Evaluate every distinct weight permutation")
    paper_order: bool = Field(False, description="Tetrahedra only: relabel and sort in table order")

    class Config:
        json_schema_extra = {
            "example": {
                "lengths": [7, 8, 9, 10, 11, 12],
                "weights": [1, 1, 1, 1],
                "mode": "fermat"
            }
        }


class MostNaturalRequest(BaseModel):
    """Consecutive integer tuple above its realizability threshold"""
    lengths: List[float] = Field(..., description="Consecutive integer edge lengths")
    weights: Optional[List[float]] = Field(None, description="Terminal weights; unit weights by default")
    bst_grid: Optional[List[float]] = Field(None, description="bST values scanned before bisection")


class MostNaturalResponse(BaseModel):
    """Max-volume simplex and the bST range where its tree is globally minimal"""
    lengths: List[float] = Field(..., description="Max-volume assignment in (1,2), (1,3), ... order")
    columns: Optional[List[float]] = Field(None, description="Tetrahedra only: a12, a43, a13, a23, a24, a14")
    bst_bound: Optional[Tuple[float, float]] = Field(None, description="Bracket of the largest admissible bST")


def _number(value):
    return value if isinstance(value, int) else float(value)


def row_document(row: MultitreeRow) -> MultitreeRowDocument:
    steiner = row.steiner
    return MultitreeRowDocument(
        lengths=list(row.assignment.lengths),
        columns=list(row.assignment.paper_columns()) if row.assignment.N == 3 else None,
        weights=list(row.weights),
        volume=row.volume,
        circumradius=row.circumradius,
        determinant=_number(row.determinant),
        fermat_length=row.fermat_length,
        fermat_kind=row.fermat.label,
        steiner_length=row.steiner_length,
        steiner_method=None if steiner is None else steiner.method,
        steiner_flags=[] if steiner is None else list(steiner.flags)
    )


def report_document(report: MultitreeReport, permute_weights: bool = False,
                    paper_order: bool = False) -> MultitreeDocument:
    """Versioned document of a multitree report."""
    return MultitreeDocument(
        config=MultitreeConfig(
            N=report.tuple.N,
            lengths=list(report.tuple.lengths),
            weights=list(report.weights),
            bst=report.bst,
            mode=report.mode.value,
            permute_weights=permute_weights,
            paper_order=paper_order
        ),
        rows=[row_document(row) for row in report.rows],
        summary=MultitreeSummary(
            global_min_index=report.global_min_index,
            max_volume_index=report.max_volume_index,
            bst_bound=report.bst_bound
        )
    )
