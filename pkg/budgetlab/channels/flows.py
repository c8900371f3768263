"""Decoherence sweeps, the purification map and the arrow-of-decoherence check."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..budget import BudgetPoint, budget_decompose
from ..config import AppConfig, load_config
from ..errors import DomainError, UnderflowError
from ..linalg import mat_power
from ..states.density import DensityMatrix, validate
from .kraus import apply, make_channel

LOGGER = logging.getLogger(__name__)

TRAJECTORY_COLUMNS = ["step", "p", "P", "Q", "B", "BL", "BNL", "X", "Y", "R", "theta"]
UNDERFLOW_LIMIT = 1e-300


@dataclass(frozen=True)
class TrajectorySample:
    p: float
    point: BudgetPoint
    stage: int = 0


@dataclass
class Trajectory:
    """Ordered budget points along a one-parameter family of states."""

    channel: str
    state: str
    samples: List[TrajectorySample] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def points(self) -> List[BudgetPoint]:
        return [s.point for s in self.samples]

    def purity_overlap_pairs(self) -> List[Tuple[float, float]]:
        return [(s.point.P, s.point.Q if s.point.Q is not None else float("nan")) for s in self.samples]

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for step, sample in enumerate(self.samples):
            pt = sample.point
            rows.append(
                {
                    "step": step,
                    "p": sample.p,
                    "P": pt.P,
                    "Q": pt.Q,
                    "B": pt.B,
                    "BL": pt.B_L,
                    "BNL": pt.B_NL,
                    "X": pt.X,
                    "Y": pt.Y,
                    "R": pt.R,
                    "theta": pt.theta,
                    "stage": sample.stage,
                }
            )
        return pd.DataFrame(rows, columns=TRAJECTORY_COLUMNS + ["stage"])


def _grid(steps: int) -> np.ndarray:
    if steps < 2:
        raise DomainError(f"a sweep needs at least two steps, got {steps}")
    return np.linspace(0.0, 1.0, steps)


def sweep(
    rho0: DensityMatrix,
    kind: str,
    target: Optional[Sequence[int] | str] = None,
    steps: Optional[int] = None,
    state_label: str = "",
    config: Optional[AppConfig] = None,
) -> Trajectory:
    """Budget points of ``channel(p)(rho0)`` on a uniform grid ``p in [0, 1]``.

    The channel is rebuilt at every strength; no semigroup law is assumed.
    """

    config = config or load_config()
    grid = _grid(steps or config.trajectories.steps)
    trajectory = Trajectory(channel=f"{kind}:{target if target is not None else 'all'}", state=state_label)
    for p in grid:
        state = apply(make_channel(kind, float(p), rho0.dims, target), rho0)
        trajectory.samples.append(TrajectorySample(p=float(p), point=budget_decompose(state, config.tolerances)))
    LOGGER.info("Swept %s through %d strengths of %s", state_label or "state", len(grid), kind)
    return trajectory


def sequential_depolarization(
    rho0: DensityMatrix,
    order: Optional[Sequence[int]] = None,
    steps: Optional[int] = None,
    state_label: str = "",
    config: Optional[AppConfig] = None,
) -> Trajectory:
    """Fully depolarise one subsystem after another, smallest dimension first.

    Each stage starts from the fully depolarised output of the previous one,
    so consecutive stages share their junction point. Samples carry the stage
    index.
    """

    config = config or load_config()
    dims = rho0.dims
    order = list(order) if order is not None else sorted(range(dims.n), key=lambda k: (dims[k], k))
    grid = _grid(steps or config.trajectories.steps)
    trajectory = Trajectory(channel="sequential-depolarizing:" + ",".join(map(str, order)), state=state_label)
    current = rho0
    for stage, subsystem in enumerate(order):
        for i, p in enumerate(grid):
            if stage > 0 and i == 0:
                continue
            state = apply(make_channel("depolarizing", float(p), dims, [subsystem]), current)
            trajectory.samples.append(
                TrajectorySample(p=stage + float(p), point=budget_decompose(state, config.tolerances), stage=stage)
            )
        current = apply(make_channel("depolarizing", 1.0, dims, [subsystem]), current)
    return trajectory


def purify(rho: DensityMatrix, n: int) -> DensityMatrix:
    """``rho^n / tr(rho^n)``."""

    if int(n) < 1:
        raise DomainError(f"purification power must be >= 1, got {n}")
    powered = mat_power(rho.mat, int(n))
    norm = float(np.trace(powered).real)
    if norm <= UNDERFLOW_LIMIT:
        raise UnderflowError(f"tr(rho^{n}) = {norm:.3e} underflows")
    return validate(powered / norm, rho.dims)


def purification_path(
    rho: DensityMatrix,
    max_power: Optional[int] = None,
    state_label: str = "",
    config: Optional[AppConfig] = None,
) -> Trajectory:
    """Budget points of ``purify(rho, n)`` for ``n = 1, ..., max_power``; ``p`` holds ``n``."""

    config = config or load_config()
    top = max_power or config.trajectories.purification_max_power
    trajectory = Trajectory(channel="purify", state=state_label)
    for n in range(1, top + 1):
        try:
            state = purify(rho, n)
        except UnderflowError:
            LOGGER.warning("Purification of %s stopped at n=%d (underflow)", state_label or "state", n)
            break
        trajectory.samples.append(TrajectorySample(p=float(n), point=budget_decompose(state, config.tolerances)))
    return trajectory


def arrow_check(
    trajectory: Union[Trajectory, Sequence[Tuple[float, float]]],
    tolerance: float = 1e-12,
) -> List[int]:
    """Indices ``i`` where both ``P`` and ``Q`` rose by more than ``tolerance`` from sample ``i - 1``."""

    pairs = trajectory.purity_overlap_pairs() if isinstance(trajectory, Trajectory) else list(trajectory)
    if len(pairs) < 2:
        raise DomainError("arrow check needs at least two samples")
    return [
        i
        for i in range(1, len(pairs))
        if pairs[i][0] - pairs[i - 1][0] > tolerance and pairs[i][1] - pairs[i - 1][1] > tolerance
    ]


__all__ = [
    "TRAJECTORY_COLUMNS",
    "Trajectory",
    "TrajectorySample",
    "arrow_check",
    "purification_path",
    "purify",
    "sequential_depolarization",
    "sweep",
]
