"""Pydantic request/response models for the beam analysis service."""

from __future__ import annotations

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field


class BeamParams(BaseModel):
    bc: Literal["pp", "cc"] = "pp"
    k: float = Field(1.0, gt=0, description="right/left flexural stiffness ratio")
    lambda0: float = Field(0.0, ge=0, description="crack intensity, left side")
    lambda1: float = Field(0.0, ge=0, description="crack intensity, right side")
    xi0: float = Field(0.5, gt=0, lt=1, description="junction/crack position")
    A: float = Field(1.0, gt=0, description="left flexural stiffness [N m^2]")
    m: float = Field(1.0, gt=0, description="mass per unit length [kg/m]")


class SolverParams(BaseModel):
    n_modes: int = Field(3, ge=1)
    alpha_max: float = Field(25.0, gt=0)
    grid_step: float = Field(0.01, gt=0)
    tol: float = Field(1e-12, gt=0)


class FreqRequest(BeamParams, SolverParams):
    pass


class ModeRow(BaseModel):
    mode_index: int
    alpha: float
    omega: float


class Shortfall(BaseModel):
    found: int
    requested: int
    detail: str


class FreqResponse(BaseModel):
    modes: List[ModeRow]
    shortfall: Optional[Shortfall] = None


class SweepRequest(FreqRequest):
    param: Literal["lambda", "k", "xi0"] = "lambda"
    start: float
    stop: float
    count: int = Field(11, ge=1)


class SweepRowOut(BaseModel):
    value: float
    alphas: List[Optional[float]]
    flagged: bool
    note: str = ""


class SweepResponse(BaseModel):
    param: str
    n_modes: int
    rows: List[SweepRowOut]


class ShapeRequest(FreqRequest):
    alpha: Optional[float] = Field(None, gt=0, description="evaluate at this frequency parameter")
    mode_index: int = Field(1, ge=1, description="used when alpha is not given")
    samples: int = Field(1001, ge=2)


class ShapeResponse(BaseModel):
    alpha: float
    omega: float
    consts: List[float]
    x: List[float]
    phi: List[float]


class VerifyRequest(FreqRequest):
    pass


class ModeVerification(BaseModel):
    mode_index: int
    alpha: float
    delta_coeffs: Dict[int, float]
    smooth_residual_max: float
    scale: float
    interface_residual: List[float]
    passed: bool


class VerifyResponse(BaseModel):
    modes: List[ModeVerification]
    tolerance: float
    all_passed: bool


class AlgebraCheckRequest(BaseModel):
    seed: int = 1234
    triples: int = Field(200, ge=1)


class CheckLineOut(BaseModel):
    name: str
    max_error: float
    tolerance: float
    passed: bool


class AlgebraCheckResponse(BaseModel):
    checks: List[CheckLineOut]
    n_passed: int
    n_failed: int
    all_passed: bool
