"""Request and response models for the HTTP endpoints."""
from __future__ import annotations

import math
from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

QUARTER_TURN = math.pi / 4.0

FamilyName = Literal["bell", "ghz"]
PairName = Literal["12", "13", "23"]


def family_qubits(name: str) -> int:
    return 2 if name == "bell" else 3


class StatePayload(BaseModel):
    """Density matrix with entries as [re, im] pairs, row major."""

    n_qubits: int = Field(ge=1)
    rho: list[list[list[float]]]


class EvolveRequest(BaseModel):
    state: FamilyName
    angle: float = Field(default=QUARTER_TURN, ge=0.0, le=2.0 * math.pi)
    r: float = Field(ge=0.0)
    qubit: int = Field(default=1, ge=1)
    t_max: Optional[float] = Field(default=None, gt=0.0)
    dt: float = Field(default=0.05, gt=0.0)
    method: Literal["direct", "dilation"] = "direct"
    pair: Optional[PairName] = None
    threads: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _cross_checks(self) -> "EvolveRequest":
        n = family_qubits(self.state)
        if self.qubit > n:
            raise ValueError(f"qubit {self.qubit} out of range for the {n}-qubit family")
        if self.pair is not None and self.state != "ghz":
            raise ValueError("pair reduction is only defined for the ghz family")
        if self.t_max is not None and self.dt > self.t_max * (1.0 + 1e-9):
            raise ValueError(f"dt={self.dt} exceeds t_max={self.t_max}")
        return self


class EvolveResponse(BaseModel):
    times: list[float]
    c_total: list[float]
    c_global: list[float]
    c_local: list[float]
    purity: list[float]
    success_probability: Optional[list[float]] = None


class ContourRequest(BaseModel):
    state: FamilyName
    r: float = Field(ge=0.0)
    angle_steps: int = Field(default=128, ge=2)
    t_max: Optional[float] = Field(default=None, gt=0.0)
    dt: float = Field(default=0.05, gt=0.0)
    qubit: int = Field(default=1, ge=1)
    threads: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _cross_checks(self) -> "ContourRequest":
        if self.qubit > family_qubits(self.state):
            raise ValueError(f"qubit {self.qubit} out of range for the {self.state} family")
        if self.t_max is not None and self.dt > self.t_max * (1.0 + 1e-9):
            raise ValueError(f"dt={self.dt} exceeds t_max={self.t_max}")
        return self


class ContourResponse(BaseModel):
    angles: list[float]
    times: list[float]
    C_T: list[list[float]]
    C_G: list[list[float]]
    C_L: list[list[float]]


class DilateRequest(BaseModel):
    r: float = Field(ge=0.0)
    t: float = Field(ge=0.0)
    check: bool = False
    state: FamilyName = "bell"
    angle: float = Field(default=QUARTER_TURN, ge=0.0, le=2.0 * math.pi)
    qubit: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _cross_checks(self) -> "DilateRequest":
        if self.qubit > family_qubits(self.state):
            raise ValueError(f"qubit {self.qubit} out of range for the {self.state} family")
        return self


class DilateResponse(BaseModel):
    theta: float
    phi: float
    success_scale: float
    success_probability: float
    max_deviation: Optional[float] = None


class TomoRequest(BaseModel):
    state: FamilyName
    angle: float = Field(default=QUARTER_TURN, ge=0.0, le=2.0 * math.pi)
    noise: float = Field(default=0.0, ge=0.0)
    seed: int = 0


class TomoResponse(BaseModel):
    fidelity: float
    residual: float
    iterations: int
    n_labels: int
    noise_sigma: float
    seed: int


class ReconstructRequest(BaseModel):
    labels: list[str]
    values: list[float]
    noise_sigma: float = Field(default=0.0, ge=0.0)
    seed: int = 0


class ReconstructResponse(BaseModel):
    state: StatePayload
    residual: float
    iterations: int


class StateMakeRequest(BaseModel):
    kind: Literal["bell", "ghz", "pseudopure"]
    angle: float = Field(default=QUARTER_TURN, ge=0.0, le=2.0 * math.pi)
    epsilon: float = Field(default=1.0, ge=0.0, le=1.0)
    n_qubits: int = Field(default=3, ge=1)


class StateInfoResponse(BaseModel):
    state: StatePayload
    purity: float
