import numpy as np
from fastapi import APIRouter, HTTPException
from core.errors import http_status
from inverse_fermat.bessel import bessel_path, bessel_plasticity
from inverse_fermat.models import (BesselRequest, BesselResponse, EpsilonRequest, EpsilonResponse, InverseRequest,
                                   InverseResponse, MutationRequest, MutationResponse, PlasticityRequest,
                                   PlasticityResponse, plasticity_document)
from inverse_fermat.plasticity import mutation_weights, plasticity_service
from inverse_fermat.service import epsilon_weights, fermat_point_invariant, inverse_fermat_service
from embedding.types import EmbeddedSimplex
from schemas.common import as_list
from schemas.responses import ErrorResponse

router = APIRouter(
    prefix="/inverse",
    tags=["Inverse Fermat"],
    responses={
        400: {"model": ErrorResponse, "description": "Bad Request - Invalid rays, point or weights"},
        422: {"model": ErrorResponse, "description": "Degenerate ray subset or infeasible system"}
    }
)


@router.post(
    "/invert",
    response_model=InverseResponse,
    summary="Invert Fermat Problem",
    description="Weights summing to C that make an interior point the weighted Fermat point"
)
def invert(request: InverseRequest):
    """
    Solve the inverse weighted Fermat problem on a simplex.

    Args:
        request: Vertices, target point, weight sum and formula

    Returns:
        InverseResponse: The weights and their residuals
    """
    try:
        sol = inverse_fermat_service.invert(request.vertices, request.point, request.C, request.method)
        return InverseResponse(weights=as_list(sol.weights), C=sol.C, residual=sol.residual,
                               round_trip_error=sol.round_trip_error)
    except ValueError as e:
        raise HTTPException(status_code=http_status(e), detail=str(e))


@router.post(
    "/plasticity",
    response_model=PlasticityResponse,
    summary="Plasticity Coefficients",
    description="Affine dependence of the base weights on the driver weights at a fixed Fermat point"
)
def plasticity(request: PlasticityRequest):
    """
    Build the dynamic plasticity system of a ray set.

    Args:
        request: Rays, weight sum and optional driver weights

    Returns:
        PlasticityResponse: Coefficients, sign diagnostics and the evaluated weights
    """
    try:
        model = plasticity_service.model(request.rays, request.C)
        return plasticity_document(model, request.drivers)
    except ValueError as e:
        raise HTTPException(status_code=http_status(e), detail=str(e))


@router.post(
    "/mutation",
    response_model=MutationResponse,
    summary="Mutation Weights",
    description="Weights with k inflow rays, a fixed total and storage at the hub"
)
def mutation(request: MutationRequest):
    """
    Solve the (m, k) mutation system.

    Args:
        request: Rays, inflow count, total weight and storage

    Returns:
        MutationResponse: The weights and the Fermat-point invariance check
    """
    try:
        model = plasticity_service.model(request.rays, request.C)
        weights = mutation_weights(model, request.k, request.c, request.storage)
        return MutationResponse(
            weights=as_list(weights),
            invariant=fermat_point_invariant(model.rays, weights, np.zeros(model.N))
        )
    except ValueError as e:
        raise HTTPException(status_code=http_status(e), detail=str(e))


@router.post(
    "/bessel",
    response_model=BesselResponse,
    summary="Bessel Plasticity",
    description="Weights along a seeded Bessel-process path of the first driver"
)
def bessel(request: BesselRequest):
    """
    Drive the plasticity system with a Bessel-process sample path.

    Args:
        request: Rays, process parameters and seed

    Returns:
        BesselResponse: The path, the weights and the admissibility flags
    """
    try:
        model = plasticity_service.model(request.rays, request.C)
        path = bessel_path(request.r0, request.m, request.t_end, request.dt, request.seed, request.noise)
        trajectory = bessel_plasticity(model, path, request.c)
        return BesselResponse(
            times=as_list(path.times),
            values=as_list(path.values),
            weights=as_list(trajectory.weights),
            admissible=as_list(trajectory.admissible),
            violations=trajectory.violations
        )
    except ValueError as e:
        raise HTTPException(status_code=http_status(e), detail=str(e))


@router.post(
    "/epsilon",
    response_model=EpsilonResponse,
    summary="Epsilon Approximation",
    description="Weights whose Fermat point is eps away from the last vertex"
)
def epsilon(request: EpsilonRequest):
    """
    Approach the absorbing boundary of the last vertex.

    Args:
        request: Vertices, distance eps and optional weight sum

    Returns:
        EpsilonResponse: The target point, weights and balance error
    """
    try:
        approx = epsilon_weights(EmbeddedSimplex.from_points(request.vertices), request.eps, request.C)
        return EpsilonResponse(point=as_list(approx.point), weights=as_list(approx.weights.weights),
                               error_estimate=approx.error_estimate, eps=approx.eps)
    except ValueError as e:
        raise HTTPException(status_code=http_status(e), detail=str(e))
