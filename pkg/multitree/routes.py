from fastapi import APIRouter, HTTPException
from core.errors import http_status
from multitree.models import (MostNaturalRequest, MostNaturalResponse, MultitreeRequest, report_document)
from multitree.service import multitree_service
from schemas.responses import ErrorResponse, MultitreeDocument

router = APIRouter(
    prefix="/multitree",
    tags=["Multitree"],
    responses={
        400: {"model": ErrorResponse, "description": "Bad Request - Invalid tuple, weights or threshold"},
        422: {"model": ErrorResponse, "description": "No realizable assignment or solver failure"}
    }
)


@router.post(
    "/build",
    response_model=MultitreeDocument,
    response_model_by_alias=True,
    summary="Build Multitree",
    description="Optimal tree on every incongruent realizable simplex of an edge tuple"
)
def build(request: MultitreeRequest):
    """
    Solve the Fermat or Fermat-Steiner problem on every simplex of the tuple.

    Args:
        request: Lengths, weights, bST and mode

    Returns:
        MultitreeDocument: One row per simplex plus the global minimum and maximum volume rows
    """
    try:
        report = multitree_service.build(request.lengths, request.weights, request.bst, request.mode,
                                         permute_weights=request.permute_weights, paper_order=request.paper_order)
        return report_document(report, request.permute_weights, request.paper_order)
    except ValueError as e:
        raise HTTPException(status_code=http_status(e), detail=str(e))


@router.post(
    "/most-natural",
    response_model=MostNaturalResponse,
    summary="Most Natural Simplex",
    description="Max-volume simplex and the bST bracket for which its Steiner tree is the global minimum"
)
def most_natural(request: MostNaturalRequest):
    """
    Locate the most natural simplex of a consecutive tuple.

    Args:
        request: Consecutive lengths, weights and an optional bST grid

    Returns:
        MostNaturalResponse: The assignment and the bST bracket, null when none was found
    """
    try:
        assign, bound = multitree_service.most_natural(request.lengths, request.weights, request.bst_grid)
        return MostNaturalResponse(
            lengths=list(assign.lengths),
            columns=list(assign.paper_columns()) if assign.N == 3 else None,
            bst_bound=bound
        )
    except ValueError as e:
        raise HTTPException(status_code=http_status(e), detail=str(e))
