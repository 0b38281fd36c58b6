"""
Runtime settings for latentsym.

Values come from `LATENTSYM_*` environment variables or a `.env` file and fall
back to the defaults in `latentsym.config`.
"""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from . import config


class LatentSymSettings(BaseSettings):
    """latentsym settings using Pydantic BaseSettings."""

    max_concurrency: int = Field(
        default=config.DEFAULT_MAX_CONCURRENCY,
        ge=1,
        description="Worker threads used by sweeps and trajectories",
    )
    log_level: str = Field(
        default=config.DEFAULT_LOG_LEVEL, description="Logging level for the CLI"
    )
    tol: float = Field(
        default=config.DEFAULT_TOL,
        gt=0,
        description="Default tolerance for complex equality comparisons",
    )
    condition_cap: float = Field(
        default=config.DEFAULT_CONDITION_CAP,
        gt=1,
        description="Eigenvector condition number above which a matrix is defective",
    )

    model_config = SettingsConfigDict(
        env_prefix="LATENTSYM_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


# Global settings instance
settings = LatentSymSettings()


def get_run_settings() -> dict:
    """Get the settings relevant to a run as a dictionary."""
    return {
        "max_concurrency": settings.max_concurrency,
        "log_level": settings.log_level,
        "tol": settings.tol,
        "condition_cap": settings.condition_cap,
    }
