"""Pydantic schemas for domain specs and numerical configs."""
from typing import Any, Literal, Optional, Type, TypeVar
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from src.core.config import settings
from src.core.exceptions import ConfigError

ModelT = TypeVar("ModelT", bound=BaseModel)


class SlitDomainSpec(BaseModel):
    """Upper half-plane minus the vertical ray {ai : a >= 1/c}."""
    model_config = ConfigDict(frozen=True)

    c: float = Field(..., gt=0.0, le=1.0, description="Slit tip sits at height 1/c")

    @property
    def tip(self) -> float:
        return 1.0 / self.c


class StripSpec(BaseModel):
    """Horizontal strip 0 < Im w < 1/c."""
    model_config = ConfigDict(frozen=True)

    c: float = Field(..., gt=0.0, lt=1.0, description="Strip height is 1/c")

    @property
    def height(self) -> float:
        return 1.0 / self.c


class SpecialFnConfig(BaseModel):
    """Quadrature controls for the Poisson integral."""
    model_config = ConfigDict(frozen=True)

    abs_tol: float = Field(default_factory=lambda: settings.abs_tol, ge=1e-12, le=1e-4)
    max_subdivisions: int = Field(default_factory=lambda: settings.max_subdivisions, ge=64)


class GridSpec(BaseModel):
    """Rectangle [x_min, x_max] x [y_min, y_max] sampled with spacing h."""
    model_config = ConfigDict(frozen=True)

    x_min: float = -3.0
    x_max: float = 3.0
    y_min: float = -1.0
    y_max: float = 3.0
    h: float = Field(0.05, gt=0.0, le=1.0)

    @model_validator(mode="after")
    def validate_rectangle(self):
        if self.x_max <= self.x_min or self.y_max <= self.y_min:
            raise ValueError("Rectangle must have positive width and height")
        if (self.x_max - self.x_min) < 4 * self.h or (self.y_max - self.y_min) < 4 * self.h:
            raise ValueError("Rectangle must span at least four grid spacings per side")
        return self

    @property
    def nx(self) -> int:
        return int(round((self.x_max - self.x_min) / self.h)) + 1

    @property
    def ny(self) -> int:
        return int(round((self.y_max - self.y_min) / self.h)) + 1


class SimSpec(BaseModel):
    """Monte Carlo experiment: Brownian motion from (0, 1) killed on a domain boundary."""
    model_config = ConfigDict(frozen=True)

    domain: Literal["slit", "strip"]
    c: float = Field(..., gt=0.0, le=1.0)
    paths: int = Field(default_factory=lambda: settings.sim_paths, ge=1)
    step: float = Field(default_factory=lambda: settings.sim_step, gt=0.0, le=1e-2)
    seed: int = Field(default_factory=lambda: settings.sim_seed, ge=0, lt=2 ** 64)
    max_time: float = Field(default_factory=lambda: settings.sim_max_time, ge=10.0)

    @property
    def max_steps(self) -> int:
        return int(round(self.max_time / self.step))


def build_model(model_cls: Type[ModelT], **kwargs: Any) -> ModelT:
    """
    Validate kwargs into model_cls, mapping validation errors to ConfigError.

    Args:
        model_cls: Target pydantic model
        **kwargs: Field values; None entries fall back to model defaults

    Returns:
        Validated model instance
    """
    values = {k: v for k, v in kwargs.items() if v is not None}
    try:
        return model_cls(**values)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or model_cls.__name__}: {err['msg']}"
            for err in e.errors()
        )
        raise ConfigError(f"Invalid {model_cls.__name__}: {problems}")


def build_sim_spec(
    domain: str,
    c: float,
    paths: Optional[int] = None,
    step: Optional[float] = None,
    seed: Optional[int] = None,
    max_time: Optional[float] = None,
) -> SimSpec:
    """SimSpec from loose arguments; missing values use settings defaults."""
    return build_model(
        SimSpec, domain=domain, c=c, paths=paths, step=step, seed=seed, max_time=max_time
    )
