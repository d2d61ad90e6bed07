from fastapi import APIRouter, HTTPException, Query
from core.errors import http_status
from realizability.models import (AssignmentRow, CheckResponse, EnumerateRequest, EnumerateResponse,
                                  ThresholdsResponse, TupleRequest)
from realizability.service import (blumenthal_ratio_threshold, dekster_wilker_min_edge, enumerate_incongruent,
                                   hertog_consecutive_root, is_realizable, min_consecutive_integer_start,
                                   min_consecutive_start, realizability_service)
from realizability.types import EdgeTuple
from schemas.responses import ErrorResponse

router = APIRouter(
    prefix="/realizability",
    tags=["Realizability"],
    responses={
        400: {"model": ErrorResponse, "description": "Bad Request - Invalid tuple"},
        422: {"model": ErrorResponse, "description": "Enumeration limit reached"}
    }
)


@router.post(
    "/check",
    response_model=CheckResponse,
    summary="Check Tuple",
    description="Count incongruent and realizable simplexes and report threshold verdicts"
)
def check(request: TupleRequest):
    """
    Realizability report for an edge tuple.

    Args:
        request: The edge length multiset

    Returns:
        CheckResponse: Class counts and Dekster-Wilker / consecutive-start verdicts
    """
    try:
        return CheckResponse(**realizability_service.check(EdgeTuple.from_lengths(request.lengths)))
    except ValueError as e:
        raise HTTPException(status_code=http_status(e), detail=str(e))


@router.post(
    "/enumerate",
    response_model=EnumerateResponse,
    summary="Enumerate Incongruent Simplexes",
    description="One assignment per relabeling class of the tuple"
)
def enumerate_classes(request: EnumerateRequest):
    """
    List the incongruent assignments of an edge tuple.

    Args:
        request: Tuple plus realizable-only and table-order switches

    Returns:
        EnumerateResponse: The assignments
    """
    try:
        edge_tuple = EdgeTuple.from_lengths(request.lengths)
        assignments = enumerate_incongruent(
            edge_tuple, realizable_only=request.realizable_only, paper_order=request.paper_order
        )
        rows = [
            AssignmentRow(
                lengths=list(a.lengths),
                columns=list(a.paper_columns()) if a.N == 3 else None,
                realizable=is_realizable(a)
            )
            for a in assignments
        ]
        return EnumerateResponse(count=len(rows), rows=rows)
    except ValueError as e:
        raise HTTPException(status_code=http_status(e), detail=str(e))


@router.get(
    "/thresholds",
    response_model=ThresholdsResponse,
    summary="Consecutive Thresholds",
    description="Dekster-Wilker, critical-determinant and square-root progression thresholds"
)
def thresholds(N: int = Query(3, ge=2, description="Simplex dimension")):
    """
    Thresholds above which consecutive lengths give only realizable simplexes.

    Args:
        N: Simplex dimension

    Returns:
        ThresholdsResponse: Threshold values; tetrahedron-only entries are null otherwise
    """
    try:
        root = hertog_consecutive_root() if N == 3 else None
        return ThresholdsResponse(
            N=N,
            dekster_wilker_lambda=dekster_wilker_min_edge(N, 1.0),
            consecutive_start=min_consecutive_start(N),
            consecutive_integer_start=min_consecutive_integer_start(N),
            hertog_root=root,
            hertog_start=None if root is None else int(-(-root // 1)),
            blumenthal_ratio=blumenthal_ratio_threshold() if N == 3 else None
        )
    except ValueError as e:
        raise HTTPException(status_code=http_status(e), detail=str(e))
