"""Pydantic records emitted by the command line and the verification suites."""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from .budget import BudgetPoint
from .linalg import DimensionProfile

SCHEMA_VERSION = 1


class BudgetRecord(BaseModel):
    """One located state."""

    dims: List[int]
    label: Optional[str] = None
    family: Optional[str] = None
    P: float = Field(..., description="Global purity tr(rho^2)")
    Q: Optional[float] = Field(None, description="Time-reversal overlap tr(rho rho~)")
    B: float
    BL: float = Field(..., description="Local budget")
    BNL: float = Field(..., description="Nonlocal budget")
    X: float
    Y: float
    R: float
    theta: Optional[float] = None

    @classmethod
    def from_point(
        cls,
        point: BudgetPoint,
        dims: DimensionProfile,
        label: Optional[str] = None,
        family: Optional[str] = None,
    ) -> "BudgetRecord":
        return cls(
            dims=list(dims.dims),
            label=label,
            family=family,
            P=point.P,
            Q=point.Q,
            B=point.B,
            BL=point.B_L,
            BNL=point.B_NL,
            X=point.X,
            Y=point.Y,
            R=point.R,
            theta=point.theta,
        )


class RegionReport(BaseModel):
    """Region flags of a point with signed margins to each boundary.

    Margins are vertical distances in the rationalised plane except ``wall``,
    which is measured in nonlocal budget units; positive means above.
    """

    dims: List[int]
    flags: List[str] = Field(default_factory=list)
    margins: Dict[str, Optional[float]] = Field(default_factory=dict)

    @property
    def unphysical(self) -> bool:
        return "unphysical" in self.flags

    def has(self, flag: str) -> bool:
        return flag in self.flags


class ResourceReport(BaseModel):
    negativity: float = Field(..., ge=0.0)
    negativity_ceiling: Optional[float] = None
    discord_value: Optional[float] = None
    discord_bounds: Optional[Tuple[float, float, float]] = Field(
        None,
        description="(lower, tight upper, absolute upper)",
    )
    chsh_max: Optional[float] = None
    chsh_flag: Optional[str] = None
    steering_S3: Optional[float] = None
    steerable: Optional[bool] = None
    magic: Optional[float] = None
    magic_bounds: Optional[Tuple[float, float]] = None
    morelli_margins: Optional[Tuple[float, float]] = None


class EnvelopeRecord(BaseModel):
    label: str
    plane: str
    dims: Optional[List[int]] = None
    pieces: List[Dict[str, Any]]
    exact_vertices: Optional[List[Tuple[str, str]]] = None


class RunManifest(BaseModel):
    """Everything needed to reproduce an emitted file."""

    command: str
    dims: Optional[List[int]] = None
    seed: int
    grid: Dict[str, Any] = Field(default_factory=dict)
    output_directory: Optional[str] = None
    format: str = "csv"
    schema_version: int = SCHEMA_VERSION
    package_version: str = ""


class VerificationCheck(BaseModel):
    name: str
    passed: bool
    detail: str = ""
    value: Optional[float] = None


class VerificationReport(BaseModel):
    suite: str
    checks: List[VerificationCheck] = Field(default_factory=list)
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, name: str, passed: bool, detail: str = "", value: Optional[float] = None) -> None:
        self.checks.append(VerificationCheck(name=name, passed=bool(passed), detail=detail, value=value))


__all__ = [
    "BudgetRecord",
    "EnvelopeRecord",
    "RegionReport",
    "ResourceReport",
    "RunManifest",
    "SCHEMA_VERSION",
    "VerificationCheck",
    "VerificationReport",
]
