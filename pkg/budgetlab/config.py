"""Application wide configuration models."""

from __future__ import annotations

import logging
import os
from typing import Literal, Optional

from pydantic import BaseModel, Field

LOGGER = logging.getLogger(__name__)

SEED_ENV_VAR = "BUDGETLAB_SEED"


class ToleranceSettings(BaseModel):
    """Numerical tolerances shared by validation and geometry checks."""

    hermitian: float = Field(
        1e-10,
        gt=0.0,
        description="Maximum |m - m^dagger| entry accepted as Hermitian",
    )
    trace: float = Field(1e-10, gt=0.0, description="Allowed deviation of tr(rho) from one")
    psd: float = Field(
        1e-9,
        gt=0.0,
        description="Most negative eigenvalue still accepted as positive semidefinite",
    )
    budget_clamp: float = Field(
        1e-10,
        ge=0.0,
        description="Negative budgets within this distance of zero are clamped to zero",
    )
    arrow: float = Field(
        1e-12,
        ge=0.0,
        description="Minimum simultaneous increase of P and Q counted as an arrow violation",
    )


class SamplingSettings(BaseModel):
    """Monte Carlo ensemble parameters."""

    seed: int = Field(12345, description="Root seed for every random stream")
    count: int = Field(100_000, ge=1, description="Default number of states per ensemble")
    wishart_retry_limit: int = Field(
        10_000,
        ge=1,
        description="Maximum Ginibre draws spent on a single filtered Wishart sample",
    )
    npt_threshold: float = Field(
        1e-8,
        ge=0.0,
        description="Negativity separating NPT from PPT Wishart draws",
    )
    ppt_purity_max: float = Field(
        0.999,
        gt=0.0,
        le=1.0,
        description="Purity cap applied to PPT-mixed Wishart draws",
    )
    progress: bool = Field(False, description="Show tqdm progress bars for long loops")


class EnvelopeSettings(BaseModel):
    """Parameters of the numeric envelope constructions."""

    cn_starts: int = Field(64, ge=1, description="Random starts per grid point of the C envelope")
    cn_grid: int = Field(41, ge=2, description="Default number of B_L grid points for the C envelope")
    oracle_step: int = Field(
        24,
        ge=2,
        description="Denominator of the brute-force simplex grid used as an oracle",
    )
    anchor_restarts: int = Field(100, ge=1, description="Restarts of the time-odd anchor search")
    anchor_tolerance: float = Field(1e-8, gt=0.0, description="Largest accepted local Q of an anchor")
    wall_steps: int = Field(101, ge=2, description="Samples per stage of the numeric wall tracer")
    classify_grid: int = Field(
        17,
        ge=2,
        description="Grid size of the cached C envelope used by region classification",
    )
    classify_starts: int = Field(16, ge=1, description="Random starts of the cached C envelope")


class TrajectorySettings(BaseModel):
    """Decoherence sweep parameters."""

    steps: int = Field(101, ge=2, description="Points on the uniform noise-strength grid")
    purification_max_power: int = Field(
        40,
        ge=2,
        description="Largest exponent n of the purification path",
    )


class ProfileSettings(BaseModel):
    """Search parameters of maximal-resource profiles."""

    budget: int = Field(32, ge=1, description="Seeds per angle")
    canonical_fraction: float = Field(
        0.7,
        ge=0.0,
        le=1.0,
        description="Share of seeds derived from the canonical construction",
    )
    shell_tolerance: float = Field(
        5e-3,
        gt=0.0,
        description="Window on R and theta that counts as the target shell",
    )
    climb_steps: int = Field(200, ge=0, description="Hill-climb steps per seed")
    perturbation: float = Field(0.05, gt=0.0, description="Scale of multiplicative perturbations")
    projection_steps: int = Field(
        400,
        ge=0,
        description="Hill-climb steps spent pulling a random seed onto the shell",
    )


class OutputSettings(BaseModel):
    """File emission settings."""

    directory: str = Field("runs", description="Default directory for emitted data files")
    format: Literal["csv", "jsonl"] = Field("csv", description="Tabular output format")


class AppConfig(BaseModel):
    """Top-level configuration container."""

    tolerances: ToleranceSettings = ToleranceSettings()
    sampling: SamplingSettings = SamplingSettings()
    envelopes: EnvelopeSettings = EnvelopeSettings()
    trajectories: TrajectorySettings = TrajectorySettings()
    profiles: ProfileSettings = ProfileSettings()
    output: OutputSettings = OutputSettings()


def _seed_from_env() -> Optional[int]:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or not raw.strip():
        return None
    try:
        return int(raw)
    except ValueError:
        LOGGER.warning("Ignoring %s=%r (not an integer)", SEED_ENV_VAR, raw)
        return None


def load_config() -> AppConfig:
    """Return an :class:`AppConfig` with defaults, honouring ``BUDGETLAB_SEED``."""

    config = AppConfig()
    seed = _seed_from_env()
    if seed is not None:
        config.sampling.seed = seed
    return config


__all__ = [
    "AppConfig",
    "EnvelopeSettings",
    "OutputSettings",
    "ProfileSettings",
    "SamplingSettings",
    "SEED_ENV_VAR",
    "ToleranceSettings",
    "TrajectorySettings",
    "load_config",
]
