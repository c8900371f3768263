"""Purity-budget decomposition and rationalised coordinates.

For a state on ``d_1 x ... x d_n`` with purity ``P`` and marginal purities
``P_k`` the total budget ``B = D P - 1`` splits into the local share
``B_L = sum_k (d_k P_k - 1)`` and the nonlocal remainder ``B_NL = B - B_L``.
The rationalised coordinates ``X = sqrt(B_L / ((D - 1) P))`` and
``Y = sqrt(B_NL / ((D - 1) P))`` place every state of purity ``P`` on a circle
of squared radius ``R = X^2 + Y^2``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .config import ToleranceSettings
from .errors import DimensionError, DomainError
from .linalg import DimensionProfile
from .states.density import DensityMatrix, marginal_purity, purity, time_reversal_overlap

LOGGER = logging.getLogger(__name__)

CONSISTENCY_TOLERANCE = 1e-8


@dataclass(frozen=True)
class BudgetPoint:
    """Macroscopic coordinates of a state.

    ``theta`` is ``None`` at the origin ``B = 0`` where the allocation angle is
    undefined. ``Q`` is ``None`` when the point was built from purities alone on
    a profile other than two qubits.
    """

    P: float
    Q: Optional[float]
    B: float
    B_L: float
    B_NL: float
    X: float
    Y: float
    R: float
    theta: Optional[float]

    def as_dict(self) -> Dict[str, Optional[float]]:
        return asdict(self)


def _clamp(value: float, tolerance: float, name: str) -> float:
    if value < 0.0:
        if value < -tolerance:
            raise DomainError(f"{name} = {value:.3e} is negative beyond the clamp tolerance")
        return 0.0
    return value


def rationalize(
    local_budget: float,
    nonlocal_budget: float,
    P: float,
    dims: DimensionProfile | Iterable[int] | str,
    tolerances: Optional[ToleranceSettings] = None,
) -> Tuple[float, float, float, Optional[float]]:
    """Map budgets to ``(X, Y, R, theta)``; raises :class:`DomainError` on inconsistent input."""

    tol = tolerances or ToleranceSettings()
    dims = DimensionProfile.of(dims)
    D = dims.D
    if not 1.0 / D - 1e-9 <= P <= 1.0 + 1e-9:
        raise DomainError(f"purity {P} outside [1/{D}, 1]")
    bl = _clamp(float(local_budget), tol.budget_clamp, "B_L")
    bnl = _clamp(float(nonlocal_budget), tol.budget_clamp, "B_NL")
    total = D * P - 1.0
    if abs(bl + bnl - total) > CONSISTENCY_TOLERANCE:
        raise DomainError(f"B_L + B_NL = {bl + bnl:.12g} does not match D P - 1 = {total:.12g}")
    scale = (D - 1) * P
    x = math.sqrt(bl / scale)
    y = math.sqrt(bnl / scale)
    theta = math.atan2(y, x) if bl + bnl > tol.budget_clamp else None
    return x, y, x * x + y * y, theta


def two_qubit_Q_from_budgets(local_budget: float, nonlocal_budget: float) -> float:
    return (1.0 - local_budget + nonlocal_budget) / 4.0


def budget_from_purities(
    P: float,
    marginals: Sequence[float],
    dims: DimensionProfile | Iterable[int] | str,
    tolerances: Optional[ToleranceSettings] = None,
) -> BudgetPoint:
    """Build a point from the global purity and the marginal purities alone."""

    tol = tolerances or ToleranceSettings()
    dims = DimensionProfile.of(dims)
    if len(marginals) != dims.n:
        raise DimensionError(f"expected {dims.n} marginal purities, got {len(marginals)}")
    for k, (pk, d) in enumerate(zip(marginals, dims)):
        if not 1.0 / d - 1e-9 <= pk <= 1.0 + 1e-9:
            raise DomainError(f"marginal purity P_{k} = {pk} outside [1/{d}, 1]")
    total = dims.D * P - 1.0
    bl = _clamp(sum(d * pk - 1.0 for pk, d in zip(marginals, dims)), tol.budget_clamp, "B_L")
    bnl = _clamp(total - bl, tol.budget_clamp, "B_NL")
    x, y, r, theta = rationalize(bl, bnl, P, dims, tol)
    q = two_qubit_Q_from_budgets(bl, bnl) if dims.dims == (2, 2) else None
    return BudgetPoint(P=P, Q=q, B=total, B_L=bl, B_NL=bnl, X=x, Y=y, R=r, theta=theta)


def budget_decompose(rho: DensityMatrix, tolerances: Optional[ToleranceSettings] = None) -> BudgetPoint:
    """Project a state onto its budget coordinates."""

    tol = tolerances or ToleranceSettings()
    P = min(purity(rho), 1.0)
    marginals = [marginal_purity(rho, k) for k in range(rho.dims.n)]
    point = budget_from_purities(P, marginals, rho.dims, tol)
    q = time_reversal_overlap(rho)
    LOGGER.debug("Decomposed %s state: P=%.6f B_L=%.6f B_NL=%.6f", rho.dims, P, point.B_L, point.B_NL)
    return BudgetPoint(**{**point.as_dict(), "Q": q})


def budgets_from_xy(
    x: float,
    y: float,
    dims: DimensionProfile | Iterable[int] | str,
) -> Tuple[float, float, float]:
    """Inverse of :func:`rationalize`: ``(P, B_L, B_NL)`` of a rationalised point."""

    dims = DimensionProfile.of(dims)
    radius = x * x + y * y
    if x < 0 or y < 0 or radius > 1.0 + 1e-12:
        raise DomainError(f"({x}, {y}) is not a point of the rationalised quarter disc")
    D = dims.D
    P = 1.0 / (D - (D - 1) * min(radius, 1.0))
    scale = (D - 1) * P
    return P, scale * x * x, scale * y * y


__all__ = [
    "BudgetPoint",
    "budget_decompose",
    "budget_from_purities",
    "budgets_from_xy",
    "rationalize",
    "two_qubit_Q_from_budgets",
]
