from fastapi import APIRouter, HTTPException
from core.errors import http_status
from fermat.models import FermatRequest, FermatResponse, solution_document
from fermat.service import fermat_service, solve_fermat
from schemas.responses import ErrorResponse

router = APIRouter(
    prefix="/fermat",
    tags=["Fermat"],
    responses={
        400: {"model": ErrorResponse, "description": "Bad Request - Invalid points or weights"},
        422: {"model": ErrorResponse, "description": "Iteration did not converge"}
    }
)


@router.post(
    "/solve",
    response_model=FermatResponse,
    summary="Weighted Fermat Point",
    description="Minimize the weighted sum of distances to the terminals"
)
def solve(request: FermatRequest):
    """
    Locate the weighted Fermat point, detecting absorption at a terminal.

    Args:
        request: Terminals, weights and an optional start

    Returns:
        FermatResponse: The point, its objective and whether it is floating or absorbed
    """
    try:
        sol = solve_fermat(request.points, request.weights, start=request.start)
        return solution_document(sol, fermat_service.vertex_objectives(request.points, request.weights))
    except ValueError as e:
        raise HTTPException(status_code=http_status(e), detail=str(e))
