"""
Core configuration management using Pydantic Settings.
Handles environment variables and numerical defaults.
"""
import os
from functools import lru_cache
from typing import Literal
from pydantic import AliasChoices, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # Application
    app_name: str = "sharp-hilbert"
    version: str = "1.0.0"
    environment: Literal["development", "test", "production"] = "development"
    log_level: str = "INFO"
    log_dir: str = "logs"

    # Parallelism
    threads: int = Field(
        default_factory=lambda: os.cpu_count() or 1,
        validation_alias=AliasChoices("SHARP_HILBERT_THREADS", "threads"),
        description="Worker cap for simulations and certificate sweeps"
    )

    # Circle grid
    grid_size: int = Field(default=2 ** 14, description="Default sample count n")

    # Quadrature
    abs_tol: float = Field(default=1e-8, ge=1e-12, le=1e-4)
    max_subdivisions: int = Field(default=200, ge=64)

    # Extremal pairs
    eval_radius: float = Field(default=1.0 - 1e-6)
    superlevel_delta: float = Field(default=1e-3, gt=0.0, lt=1.0)
    singularity_cap: float = Field(default=1e3, gt=0.0)
    singularity_guard: int = Field(default=16, ge=1)

    # Monte Carlo
    sim_step: float = 1e-3
    sim_paths: int = Field(default=100_000, ge=1)
    sim_max_time: float = Field(default=5000.0, ge=10.0)
    sim_seed: int = 7
    progress_every: int = Field(default=10_000, ge=1)
    bias_allowance: float = 2e-2

    # Verification
    inequality_tolerance: float = 1e-9

    @field_validator("threads")
    @classmethod
    def validate_threads(cls, v):
        if v < 1:
            raise ValueError("SHARP_HILBERT_THREADS must be at least 1")
        return v

    @field_validator("grid_size")
    @classmethod
    def validate_grid_size(cls, v):
        if v < 8 or v & (v - 1):
            raise ValueError("grid_size must be a power of two and at least 8")
        return v

    @field_validator("sim_step")
    @classmethod
    def validate_step(cls, v):
        if not 0.0 < v <= 1e-2:
            raise ValueError("sim_step must lie in (0, 1e-2]")
        return v

    @property
    def is_test(self) -> bool:
        return self.environment == "test"

    def provenance(self) -> dict:
        """Defaults echoed into every report."""
        return {
            "app": self.app_name,
            "version": self.version,
            "grid_size": self.grid_size,
            "sim_step": self.sim_step,
            "sim_paths": self.sim_paths,
            "sim_max_time": self.sim_max_time,
            "abs_tol": self.abs_tol,
            "max_subdivisions": self.max_subdivisions,
            "eval_radius": self.eval_radius,
            "superlevel_delta": self.superlevel_delta,
        }


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Global settings instance
settings = get_settings()
