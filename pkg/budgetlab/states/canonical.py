"""Two-parameter family covering the whole two-qubit budget region.

The state at ``(mu, alpha)`` has correlations ``t = diag(mu sin a, -mu sin a, mu)``
and Bloch vectors ``r = (0, 0, mu cos a)``, ``s = (0, 0, cos a)``. Its budgets are
``B_L = (1 + mu^2) cos^2 a`` and ``B_NL = mu^2 (3 - 2 cos^2 a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..errors import DomainError
from .decompositions import FanoComponents, TWO_QUBITS, reconstruct_matrix
from .density import DensityMatrix, validate

HALF_PI = math.pi / 2.0
_EDGE = 1e-12


@dataclass(frozen=True)
class CanonicalParams:
    mu: float
    alpha: float

    def __post_init__(self) -> None:
        if not -_EDGE <= self.mu <= 1.0 + _EDGE:
            raise DomainError(f"mu must lie in [0, 1], got {self.mu}")
        if not -_EDGE <= self.alpha <= HALF_PI + _EDGE:
            raise DomainError(f"alpha must lie in [0, pi/2], got {self.alpha}")
        object.__setattr__(self, "mu", float(min(max(self.mu, 0.0), 1.0)))
        object.__setattr__(self, "alpha", float(min(max(self.alpha, 0.0), HALF_PI)))

    def fano(self) -> FanoComponents:
        mu, a = self.mu, self.alpha
        t = np.diag([mu * math.sin(a), -mu * math.sin(a), mu])
        return FanoComponents(
            r=np.array([0.0, 0.0, mu * math.cos(a)]),
            s=np.array([0.0, 0.0, math.cos(a)]),
            t=t,
        )

    def budgets(self) -> Tuple[float, float]:
        c2 = math.cos(self.alpha) ** 2
        mu2 = self.mu**2
        return (1.0 + mu2) * c2, mu2 * (3.0 - 2.0 * c2)


def canonical_eigenvalues(params: CanonicalParams) -> np.ndarray:
    """``(l1, l2, l3, l4)`` from the two 2x2 blocks of the construction."""

    fano = params.fano()
    r3, s3 = fano.r[2], fano.s[2]
    t1, t2, t3 = fano.t[0, 0], fano.t[1, 1], fano.t[2, 2]
    delta_plus = math.hypot(r3 + s3, t1 - t2)
    delta_minus = math.hypot(r3 - s3, t1 + t2)
    return np.array(
        [
            (1 + t3 + delta_plus) / 4,
            (1 + t3 - delta_plus) / 4,
            (1 - t3 + delta_minus) / 4,
            (1 - t3 - delta_minus) / 4,
        ]
    )


def canonical_two_qubit(params: CanonicalParams) -> DensityMatrix:
    return validate(reconstruct_matrix(params.fano()), TWO_QUBITS)


def canonical_params_for(local_budget: float, nonlocal_budget: float) -> CanonicalParams:
    """Invert the construction: the parameters reaching ``(B_L, B_NL)``.

    With ``u = mu^2`` the budgets satisfy ``3u^2 + (3 - 2B_L - B_NL)u - B_NL = 0``;
    the non-negative root fixes ``mu`` and then ``cos^2 a = B_L / (1 + u)``.
    Raises :class:`DomainError` outside the two-qubit feasible region.
    """

    bl = max(float(local_budget), 0.0)
    bnl = max(float(nonlocal_budget), 0.0)
    linear = 3.0 - 2.0 * bl - bnl
    u = (-linear + math.sqrt(linear * linear + 12.0 * bnl)) / 6.0
    if u > 1.0 + 1e-9:
        raise DomainError(f"budgets ({bl}, {bnl}) exceed the pure-state circle")
    u = min(u, 1.0)
    c2 = bl / (1.0 + u)
    if c2 > 1.0 + 1e-9:
        raise DomainError(f"budgets ({bl}, {bnl}) lie beyond the positivity wall")
    c2 = min(c2, 1.0)
    return CanonicalParams(mu=math.sqrt(u), alpha=math.acos(math.sqrt(c2)))


def canonical_params_for_xy(x: float, y: float) -> CanonicalParams:
    """Parameters for a rationalised two-qubit point ``(X, Y)``."""

    radius = x * x + y * y
    if radius > 1.0 + 1e-12:
        raise DomainError(f"point ({x}, {y}) lies outside the unit circle")
    purity = 1.0 / (4.0 - 3.0 * min(radius, 1.0))
    return canonical_params_for(3.0 * purity * x * x, 3.0 * purity * y * y)


__all__ = [
    "CanonicalParams",
    "canonical_eigenvalues",
    "canonical_params_for",
    "canonical_params_for_xy",
    "canonical_two_qubit",
]
