"""Configuration management for the ERS toolkit."""

from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables (prefix ``ERS_``)."""

    model_config = SettingsConfigDict(
        env_prefix="ERS_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="WARNING",
        description="Logging level for library modules"
    )
    output_dir: Path = Field(
        default=Path("runs"),
        description="Base directory for run outputs (one subdirectory per scenario)"
    )
    io_retry_attempts: int = Field(
        default=3,
        description="Attempts for atomic file replacement before giving up"
    )

    # Integrator defaults
    default_dt: float = Field(default=1e-4, description="Fixed integration step")
    default_horizon: float = Field(default=10.0, description="Simulated time span")
    settle_tol: float = Field(default=1e-6, description="|e| threshold for settling")
    deadzone: float = Field(
        default=1e-12,
        description="Numerical zero clamp applied in the undisturbed regime"
    )
    max_step_rejections: int = Field(
        default=40,
        description="Step halvings allowed per sample step before a zero crossing counts as arrival"
    )

    # Special functions
    cf_max_iterations: int = Field(
        default=300,
        description="Continued-fraction iteration cap for the incomplete Beta function"
    )
    cf_epsilon: float = Field(default=1e-15, description="Continued-fraction convergence tolerance")

    # Settling-time formulas
    regime_tolerance: float = Field(
        default=1e-9,
        description="Relative tolerance used to detect special parameter slices and a=0"
    )
    theta_guard: float = Field(
        default=1e-6,
        description="theta outside [guard, 1-guard] attaches a csc conditioning warning"
    )

    # QP front end
    condition_limit: float = Field(
        default=1e12,
        description="Condition estimate above which M(t) is rejected as ill-conditioned"
    )
    fd_relative_step: float = Field(
        default=1e-6,
        description="Central-difference step (scaled by max(1,|t|)) when derivatives are absent"
    )

    # Verification suite
    quick_dt: float = Field(default=1e-3, description="Step used by verify --level quick")
    full_dt: float = Field(default=1e-4, description="Step used by verify --level full")
    verify_jobs: int = Field(default=1, description="Worker processes for verification checks")


# Global settings instance (lazy initialization so tests can patch the environment first)
_settings = None

def get_settings() -> Settings:
    """Get or create settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings

settings = get_settings()
