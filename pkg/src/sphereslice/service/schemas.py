"""Request and response models for the transform service."""

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator


class ForwardRequest(BaseModel):
    """One batch of forward transform evaluations.

    Evaluation directions come either from a lat-lon product grid (grid =
    [rows, cols]) or from seeded random sampling (random_points).  Sampled
    input fields are referenced by a grid-file path in field.
    """

    transform: Literal["F", "S"] = "F"
    n: int = 2
    a: float = 0.0
    field: str = "const1"
    grid: Optional[tuple[int, int]] = None
    random_points: Optional[int] = None
    seed: int = 0
    resolution: int = 64
    margin: float = 0.1

    @field_validator("n")
    @classmethod
    def _n_supported(cls, v):
        if v not in (2, 3):
            raise ValueError("sphere dimension n must be 2 or 3")
        return v

    @field_validator("a")
    @classmethod
    def _a_range(cls, v):
        if not -1.0 < v <= 1.0:
            raise ValueError("height a must lie in (-1, 1]")
        return v

    @field_validator("resolution")
    @classmethod
    def _resolution_range(cls, v):
        if not 8 <= v <= 256:
            raise ValueError("resolution must lie in [8, 256]")
        return v


class ForwardResponse(BaseModel):
    columns: list[str]
    rows: list[list[float]]
    transform: str
    n: int
    a: float
    field: str


class ReconstructRequest(BaseModel):
    """Round-trip reconstruction driven by a catalog field (ground truth known)."""

    transform: Literal["F", "S"] = "F"
    n: int = 2
    a: float = 0.5
    field: str = "z2"
    grid: tuple[int, int] = (16, 32)
    seed: int = 0
    resolution: int = 48
    margin: float = 0.3
    tolerance: Optional[float] = None

    @field_validator("n")
    @classmethod
    def _n_supported(cls, v):
        if v != 2:
            raise ValueError("reconstruction is implemented for n = 2")
        return v

    @field_validator("a")
    @classmethod
    def _a_range(cls, v):
        if not -1.0 < v <= 1.0:
            raise ValueError("height a must lie in (-1, 1]")
        return v


class Metrics(BaseModel):
    rel_l2: float
    max_abs: float
    runtime_s: float


class ReconstructSummary(BaseModel):
    command: str
    config: dict
    metrics: Metrics
    passed: bool = Field(alias="pass")

    model_config = {"populate_by_name": True}


class ReconstructResponse(BaseModel):
    columns: list[str]
    rows: list[list[float]]
    summary: ReconstructSummary


class SelftestRequest(BaseModel):
    suites: Optional[list[str]] = None
    seed: int = 0
    perturb: bool = False


class SelftestResponse(BaseModel):
    report: dict
    passed: bool = Field(alias="pass")

    model_config = {"populate_by_name": True}


class HealthResponse(BaseModel):
    status: str
    version: str
