"""Pydantic request/response models for the HTTP service.

Gaussian integers and complex values are carried as "a+bi" strings; see
ccrt.config for the text form.
"""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field

from ..config import SystemConfig


class HealthResponse(BaseModel):
    status: str = "ok"
    version: str


class ReconstructRequest(BaseModel):
    system: SystemConfig
    remainders: list[str] = Field(min_length=1)


class ReconstructResponse(BaseModel):
    n: str
    r_common: str
    q: list[str]
    n0: str


class EstimateRequest(BaseModel):
    system: SystemConfig
    remainders: list[str] = Field(min_length=1)
    sigmas: list[float] = Field(min_length=1)


class EstimateResponse(BaseModel):
    n_hat: str
    r_c_hat: str
    q_hat: list[str]
    n0_hat: str
    objective: float
    evaluations: int
    real_mults: int


class RobustnessRequest(BaseModel):
    M: float = Field(gt=0)
    deltas: list[str] = Field(min_length=2)
    sigmas: list[float] = Field(min_length=2)


class RobustnessResponse(BaseModel):
    condition_holds: bool
    first_violating_subset: Optional[list[int]]
    mean_error: str
    rmse_theory: float


class SimulateRequest(BaseModel):
    config: dict[str, Any]
    threads: int = Field(default=1, ge=1, le=64)


class SimulateResponse(BaseModel):
    campaign: str
    columns: list[str]
    rows: list[list[Any]]
    csv: str
    manifest: dict[str, Any]


class CountOpsRequest(BaseModel):
    channel_counts: list[int] = Field(min_length=1)
    M: int = Field(default=10, ge=1)
    seed: int = 0


class OpsCountModel(BaseModel):
    L: int
    evaluations: int
    real_mults: int
    bound: int


class CountOpsResponse(BaseModel):
    counts: list[OpsCountModel]
