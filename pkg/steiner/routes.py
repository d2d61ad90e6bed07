from fastapi import APIRouter, HTTPException
from core.errors import http_status
from schemas.responses import ErrorResponse
from steiner.models import SteinerTreeResponse, TetrahedronRequest, TopologyRequest, tree_document
from steiner.service import steiner_service

router = APIRouter(
    prefix="/steiner",
    tags=["Steiner"],
    responses={
        400: {"model": ErrorResponse, "description": "Bad Request - Invalid terminals, weights or topology"},
        422: {"model": ErrorResponse, "description": "Degenerate tree or no convergence"}
    }
)


@router.post(
    "/tetrahedron",
    response_model=SteinerTreeResponse,
    summary="Weighted Steiner Tree of a Tetrahedron",
    description="Best of the three two-node pairings and the Fermat star"
)
def tetrahedron(request: TetrahedronRequest):
    """
    Solve the weighted Steiner problem on four terminals in R^3.

    Args:
        request: Vertices, terminal weights and the Steiner-edge weight

    Returns:
        SteinerTreeResponse: The minimal tree with its Simpson line data when available
    """
    try:
        tree = steiner_service.tetrahedron(request.vertices, request.weights, request.bst)
        return tree_document(tree)
    except ValueError as e:
        raise HTTPException(status_code=http_status(e), detail=str(e))


@router.post(
    "/topology",
    response_model=SteinerTreeResponse,
    summary="Fixed-Topology Steiner Tree",
    description="Minimal weighted tree for a given topology by block-coordinate descent"
)
def topology(request: TopologyRequest):
    """
    Place the Steiner nodes of a fixed topology.

    Args:
        request: Terminals, weights and the topology edges

    Returns:
        SteinerTreeResponse: Node positions, length and balance residuals
    """
    try:
        tree = steiner_service.topology(request.points, request.weights, request.bst, request.n_steiner,
                                        request.edges, request.intermediate)
        return tree_document(tree)
    except ValueError as e:
        raise HTTPException(status_code=http_status(e), detail=str(e))
