from fastapi import APIRouter, HTTPException
from core.errors import http_status
from geometry.models import CayleyMengerResponse, DistanceMatrixRequest, VolumeResponse
from geometry.service import cayley_menger_det, geometry_service, volume_factor
from schemas.responses import ErrorResponse

router = APIRouter(
    prefix="/geometry",
    tags=["Geometry"],
    responses={
        400: {"model": ErrorResponse, "description": "Bad Request - Invalid lengths or non-realizable simplex"},
        422: {"model": ErrorResponse, "description": "Degenerate simplex"}
    }
)


def _number(value):
    return value if isinstance(value, int) else float(value)


@router.post(
    "/cayley-menger",
    response_model=CayleyMengerResponse,
    summary="Cayley-Menger Determinant",
    description="Bordered determinant of squared edge lengths; its sign decides realizability"
)
def cayley_menger(request: DistanceMatrixRequest):
    """
    Evaluate the Cayley-Menger determinant of a simplex given by its edge lengths.

    Args:
        request: Vertex count and edge lengths

    Returns:
        CayleyMengerResponse: Determinant and the factor relating it to the squared volume
    """
    try:
        dm = geometry_service.distance_matrix(request.n, request.lengths)
        return CayleyMengerResponse(
            determinant=_number(cayley_menger_det(dm)),
            dimension=dm.dimension,
            volume_factor=volume_factor(dm.dimension)
        )
    except ValueError as e:
        raise HTTPException(status_code=http_status(e), detail=str(e))


@router.post(
    "/volume",
    response_model=VolumeResponse,
    summary="Simplex Volume",
    description="Volume and circumradius from edge lengths"
)
def volume(request: DistanceMatrixRequest):
    """
    Compute the volume of a simplex from its edge lengths.

    Args:
        request: Vertex count and edge lengths

    Returns:
        VolumeResponse: Volume, circumradius and determinant

    Raises:
        HTTPException: 400 when the lengths do not form a Euclidean simplex
    """
    try:
        info = geometry_service.describe(geometry_service.distance_matrix(request.n, request.lengths))
        return VolumeResponse(
            volume=info["volume"],
            circumradius=info["circumradius"],
            determinant=_number(info["determinant"])
        )
    except ValueError as e:
        raise HTTPException(status_code=http_status(e), detail=str(e))


@router.post(
    "/circumradius",
    response_model=VolumeResponse,
    summary="Circumradius",
    description="Radius of the sphere through all vertices"
)
def circumradius(request: DistanceMatrixRequest):
    """Circumradius of the simplex; same payload as /volume."""
    return volume(request)
