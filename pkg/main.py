from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from geometry.routes import router as geometry_router
from realizability.routes import router as realizability_router
from fermat.routes import router as fermat_router
from inverse_fermat.routes import router as inverse_router
from steiner.routes import router as steiner_router
from multitree.routes import router as multitree_router
from core.config import settings
from schemas.responses import HealthCheckResponse, RootResponse

app = FastAPI(
    title="Fermat-Steiner-Frechet Multitree API",
    description="""
    ## Weighted Fermat and Steiner trees over every simplex of an edge tuple

    Given N(N+1)/2 edge lengths, this API enumerates the incongruent simplexes they
    determine, keeps the Euclidean ones, and solves the weighted Fermat or
    Fermat-Steiner problem on each.

    ### Features:
    - **Geometry**: Cayley-Menger determinants, volumes and circumradii
    - **Realizability**: Incongruent simplex counts and consecutive-length thresholds
    - **Fermat**: Weighted Fermat points with absorption detection
    - **Inverse Fermat**: Weights for a prescribed Fermat point, plasticity and mutation systems
    - **Steiner**: Two-node trees on tetrahedra via the Simpson line, fixed-topology descent
    - **Multitree**: Global minimum and maximum-volume rows, most natural simplex search

    ### Getting Started:
    1. Check a tuple at `/realizability/check`
    2. Build its multitree at `/multitree/build`
    3. Inspect a single tree at `/steiner/tetrahedron`
    """,
    version="1.0.0",
    contact={
        "name": "Multitree Maintainers",
        "email": "maintainers@multitree.dev"
    },
    license_info={
        "name": "MIT License",
        "url": "https://opensource.org/licenses/MIT"
    }
)

# CORS configuration for local testing
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Mount routers
ROUTERS = (geometry_router, realizability_router, fermat_router, inverse_router, steiner_router, multitree_router)
for router in ROUTERS:
    app.include_router(router)


@app.get(
    "/health",
    response_model=HealthCheckResponse,
    summary="Health Check",
    description="Check if the service is running properly",
    tags=["System"]
)
async def health_check():
    """
    Check the health status of the Multitree API.

    Returns:
        HealthCheckResponse: Service status information
    """
    return HealthCheckResponse(
        status="healthy",
        service="multitree",
        version="1.0.0"
    )


@app.get(
    "/",
    response_model=RootResponse,
    summary="API Information",
    description="Get basic information about the API and available endpoints",
    tags=["System"]
)
async def root():
    """
    Get basic information about the Multitree API.

    Returns:
        RootResponse: API information and navigation links
    """
    return RootResponse(
        message="Fermat-Steiner-Frechet Multitree API",
        docs="/docs",
        health="/health",
        routers=[router.prefix for router in ROUTERS]
    )


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "main:app",
        host="0.0.0.0",
        port=settings.app_port,
        reload=settings.app_env == "dev"
    )
