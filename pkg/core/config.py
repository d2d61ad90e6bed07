from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # FastAPI
    app_env: str = "dev"
    app_port: int = 8000
    log_level: str = "INFO"

    # Parallel map over incongruent assignments
    multitree_threads: int = 4

    # Distance geometry
    realizability_tolerance: float = 1e-9
    embedding_pivot_tolerance: float = 1e-10
    enumeration_cap: int = 50000

    # Weighted Fermat iteration
    fermat_tolerance: float = 1e-10
    fermat_max_iterations: int = 100000

    # Steiner solvers
    fixed_point_tolerance: float = 1e-12
    fixed_point_max_iterations: int = 10000
    descent_tolerance: float = 1e-12
    descent_max_sweeps: int = 20000
    balance_tolerance: float = 1e-8

    # Threshold searches
    bisection_tolerance: float = 1e-6
    bisection_max_iterations: int = 60

    class Config:
        env_file = ".env"
        case_sensitive = False


settings = Settings()
