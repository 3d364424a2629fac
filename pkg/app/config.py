from typing import List

from pydantic import AliasChoices, Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Application Configuration
    app_name: str = "Wright Partial Sums Verifier"
    app_version: str = "0.1.0"
    debug: bool = False
    host: str = "0.0.0.0"
    port: int = 8000
    log_level: str = "INFO"

    # Series Evaluation
    term_cap: int = Field(
        10000,
        ge=1,
        validation_alias=AliasChoices("WRIGHT_TERM_CAP", "term_cap"),
    )
    default_tolerance: float = 1e-15

    # Certification Scanning
    boundary_points: int = 4096
    radii: List[float] = [0.5, 0.9, 0.99, 0.999, 1.0]
    zero_threshold: float = 1e-6
    interior_lattice: int = 128
    base_slack: float = 1e-9

    # Default sweep grid
    sweep_lambdas: List[float] = [-0.5, 0.0, 0.5, 1.0, 2.0]
    sweep_ns: List[int] = [0, 1, 2, 5, 10]

    class Config:
        env_file = ".env"
        case_sensitive = False
        extra = "ignore"


settings = Settings()
