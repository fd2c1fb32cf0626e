"""Request/response models for the HTTP service.

Requests mirror the CLI flags; responses are flat snake_case objects with a
nested ``quadrature`` diagnostics block, so JSON output diffs cleanly.
"""

from __future__ import annotations

import math
from typing import Literal

from pydantic import BaseModel, Field, field_validator, model_validator

Axis = Literal["x", "y", "z"]

# spin given as ((re1, im1), (re2, im2)); must have unit norm
Spinor = tuple[tuple[float, float], tuple[float, float]]


def spinor_to_complex(spin: Spinor | None):
    if spin is None:
        return None
    return [complex(re, im) for re, im in spin]


class _RapidityMixin(BaseModel):
    rapidity: float | None = None
    beta: float | None = None

    @model_validator(mode="after")
    def _resolve_rapidity(self):
        if self.rapidity is not None and self.beta is not None:
            raise ValueError("give either rapidity or beta, not both")
        if self.beta is not None:
            if not abs(self.beta) < 1.0:
                raise ValueError(f"invalid beta {self.beta}: |beta| must be < 1")
            self.rapidity = math.atanh(self.beta)
        elif self.rapidity is None:
            self.rapidity = 0.0
        return self


class PacketParams(BaseModel):
    mass: float = Field(gt=0)
    width: float = Field(gt=0)
    spin: Spinor | None = None

    @field_validator("spin")
    @classmethod
    def _unit_spinor(cls, spin):
        if spin is None:
            return spin
        norm = math.sqrt(sum(re * re + im * im for re, im in spin))
        if abs(norm - 1.0) > 1e-8:
            raise ValueError(f"spin must be a unit 2-spinor, got norm {norm}")
        return spin


class EntropyRequest(PacketParams, _RapidityMixin):
    axis: Axis = "x"
    nodes: int | None = Field(default=None, ge=8)


class QuadratureDiagnostics(BaseModel):
    nodes_per_axis: int
    error_estimate: float
    tolerance: float


class EntropyResponse(BaseModel):
    w: float
    m: float
    alpha: float
    axis: Axis
    t: float
    s_numeric: float
    s_leading: float
    nz_numeric: float
    nz_leading: float
    relative_deviation: float
    n: list[float]
    eigenvalues: list[float]
    bloch_norm: float
    quadrature: QuadratureDiagnostics


class ScanRequest(BaseModel):
    mass: float = Field(gt=0)
    widths: list[float] = Field(min_length=1)
    alphas: list[float] = Field(min_length=1)
    axis: Axis = "x"
    nodes: int | None = Field(default=None, ge=8)

    @field_validator("widths")
    @classmethod
    def _positive_widths(cls, widths):
        if any(w <= 0 for w in widths):
            raise ValueError("widths must be positive")
        return widths


class ScanRow(BaseModel):
    w: float
    m: float
    alpha: float
    t: float
    s_numeric: float
    s_leading: float
    nz_numeric: float
    nz_leading: float
    quad_error: float


class ScanResponse(BaseModel):
    rows: list[ScanRow]


class VerifyRequest(BaseModel):
    seed: int = 0
    nodes: int | None = Field(default=None, ge=8)


class CheckReport(BaseModel):
    name: str
    category: Literal["algebraic", "quadrature"]
    passed: bool
    measured: float
    threshold: float
    detail: str = ""


class VerifyResponse(BaseModel):
    passed: bool
    checks: list[CheckReport]


class FrameSearchRequest(PacketParams):
    boost_rapidity: float | None = None
    boost_beta: float | None = None
    boost_axis: Axis = "x"
    nodes: int | None = Field(default=None, ge=8)
    max_evaluations: int = Field(default=500, ge=1)
    max_iterations: int = Field(default=50, ge=1)

    @model_validator(mode="after")
    def _resolve_boost(self):
        if self.boost_rapidity is not None and self.boost_beta is not None:
            raise ValueError("give either boost_rapidity or boost_beta, not both")
        if self.boost_beta is not None:
            if not abs(self.boost_beta) < 1.0:
                raise ValueError(f"invalid beta {self.boost_beta}: |beta| must be < 1")
            self.boost_rapidity = math.atanh(self.boost_beta)
        elif self.boost_rapidity is None:
            self.boost_rapidity = 0.0
        return self


class FrameSearchResponse(BaseModel):
    rapidity: list[float]
    s_min: float
    residual_mean_momentum: list[float]
    evaluations: int
    converged: bool


class HealthResponse(BaseModel):
    status: str
    version: str
