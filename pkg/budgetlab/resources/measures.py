"""Resource quantities and the kinematic bounds the budget coordinates put on them."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from ..budget import BudgetPoint, budget_decompose
from ..config import AppConfig, load_config
from ..errors import DimensionError, DomainError
from ..linalg import herm_eig, partial_transpose
from ..schemas import ResourceReport
from ..states.decompositions import PauliSpectrum, TWO_QUBITS, fano_decompose, pauli_spectrum
from ..states.density import DensityMatrix

LOGGER = logging.getLogger(__name__)

CHSH_CLASSICAL_LIMIT = 2.0
CHSH_IMPOSSIBLE_MAX = 1.0
CHSH_GUARANTEED_MIN = 1.5
BOUND_TOLERANCE = 1e-9

SpectrumLike = Union[PauliSpectrum, DensityMatrix]


# ---- entanglement


def negativity(rho: DensityMatrix, cut: int = 0) -> float:
    """Sum of the magnitudes of the negative eigenvalues of ``rho^(T_cut)``."""

    values = herm_eig(partial_transpose(rho.mat, rho.dims, cut))
    return float(np.sum(np.clip(-values, 0.0, None)))


def negativity_ceiling(R: float) -> float:
    """Largest two-qubit negativity at squared radius ``R``."""

    if not -1e-12 <= R <= 1.0 + 1e-12:
        raise DomainError(f"R = {R} outside [0, 1]")
    R = min(max(R, 0.0), 1.0)
    return max(0.0, math.sqrt(9.0 * R / (64.0 - 48.0 * R)) - 0.25)


# ---- discord


def _require_two_qubits(rho: DensityMatrix, name: str) -> None:
    if rho.dims != TWO_QUBITS:
        raise DimensionError(f"{name} is defined for two qubits, got profile {rho.dims}")


def _measured_side(rho: DensityMatrix, side: int) -> Tuple[np.ndarray, np.ndarray]:
    fano = fano_decompose(rho)
    if side == 1:
        return fano.r, fano.t @ fano.t.T
    if side == 2:
        return fano.s, fano.t.T @ fano.t
    raise DomainError(f"discord side must be 1 or 2, got {side}")


def geometric_discord_2q(rho: DensityMatrix, side: int = 1) -> float:
    """``(|v|^2 + |t|_F^2 - k_max) / 4`` with ``k_max`` the top eigenvalue of ``v v^T + t t^T``."""

    _require_two_qubits(rho, "geometric discord")
    v, tt = _measured_side(rho, side)
    k = np.outer(v, v) + tt
    k_max = float(np.linalg.eigvalsh(k)[-1])
    return max(0.0, (float(v @ v) + float(np.trace(tt)) - k_max) / 4.0)


def discord_bounds(rho: DensityMatrix, side: int = 1) -> Tuple[float, float, float]:
    """``(lower, tight upper, absolute upper)`` of the geometric discord.

    The absolute bound ``B / 6`` depends on the purity alone.
    """

    _require_two_qubits(rho, "discord bounds")
    v, _ = _measured_side(rho, side)
    fano = fano_decompose(rho)
    bnl = fano.nonlocal_budget
    t2 = fano.t_max**2
    total = fano.local_budget + bnl
    return (bnl - t2) / 4.0, (float(v @ v) + bnl - t2) / 4.0, total / 6.0


# ---- nonlocality and steering


def chsh_max(rho: DensityMatrix) -> float:
    """Largest CHSH value, ``2 sqrt(t_1^2 + t_2^2)`` over the two top singular values."""

    _require_two_qubits(rho, "CHSH")
    tsv = fano_decompose(rho).tsv
    return 2.0 * math.sqrt(float(tsv[0] ** 2 + tsv[1] ** 2))


def chsh_flags(point: BudgetPoint) -> str:
    """``impossible`` on or below the C envelope, ``guaranteed`` above ``B_NL = 3/2``."""

    if point.B_NL <= CHSH_IMPOSSIBLE_MAX:
        return "impossible"
    if point.B_NL > CHSH_GUARANTEED_MIN:
        return "guaranteed"
    return "possible"


def steering_ls3(rho: DensityMatrix) -> Tuple[float, bool]:
    _require_two_qubits(rho, "LS3 steering")
    value = fano_decompose(rho).nonlocal_budget
    return value, value > 1.0


# ---- magic


def _spectrum(spec: SpectrumLike) -> PauliSpectrum:
    return pauli_spectrum(spec) if isinstance(spec, DensityMatrix) else spec


def magic_renyi2(spec: SpectrumLike) -> float:
    """Stabiliser Renyi-2 magic ``-log2((1 + S4) / (1 + B))``."""

    spectrum = _spectrum(spec)
    return -math.log2((1.0 + spectrum.fourth_moment) / (1.0 + spectrum.budget))


def magic_budget_bounds(B: float, n_qubits: int, x_max: float = 1.0) -> Tuple[float, float]:
    """Magic bracket from the second moment ``B`` and the largest coefficient magnitude."""

    base = math.log2(1.0 + B)
    n_p = 4**n_qubits - 1
    return base - math.log2(1.0 + x_max**2 * B), base - math.log2(1.0 + B * B / n_p)


def magic_bounds(spec: SpectrumLike) -> Tuple[float, float]:
    spectrum = _spectrum(spec)
    return magic_budget_bounds(spectrum.budget, spectrum.n_qubits, spectrum.x_max)


# ---- positivity surrogate


@dataclass(frozen=True)
class MorelliMargins:
    upper: float
    lower: float

    @property
    def upper_ok(self) -> bool:
        return self.upper >= -BOUND_TOLERANCE

    @property
    def lower_ok(self) -> bool:
        return self.lower >= -BOUND_TOLERANCE


def morelli_check(rho: DensityMatrix) -> MorelliMargins:
    """Margins of ``B_NL <= 3 + B_L - 4|r||s| - 4||r| - |s||`` and ``sqrt(B_NL) >= |r| + |s| - 1``."""

    _require_two_qubits(rho, "the two-qubit positivity bounds")
    fano = fano_decompose(rho)
    r, s = fano.r_norm, fano.s_norm
    bnl = fano.nonlocal_budget
    upper = 3.0 + fano.local_budget - 4.0 * r * s - 4.0 * abs(r - s) - bnl
    lower = math.sqrt(bnl) - (r + s - 1.0)
    return MorelliMargins(upper=upper, lower=lower)


# ---- report


def resource_report(rho: DensityMatrix, config: Optional[AppConfig] = None) -> ResourceReport:
    """Every applicable resource of ``rho``; two-qubit-only entries stay empty elsewhere."""

    config = config or load_config()
    point = budget_decompose(rho, config.tolerances)
    fields = {"negativity": negativity(rho, 0) if rho.dims.n > 1 else 0.0}
    if rho.dims == TWO_QUBITS:
        margins = morelli_check(rho)
        value, steerable = steering_ls3(rho)
        fields.update(
            negativity_ceiling=negativity_ceiling(point.R),
            discord_value=geometric_discord_2q(rho),
            discord_bounds=discord_bounds(rho),
            chsh_max=chsh_max(rho),
            chsh_flag=chsh_flags(point),
            steering_S3=value,
            steerable=steerable,
            morelli_margins=(margins.upper, margins.lower),
        )
    if rho.dims.is_qubits:
        spectrum = pauli_spectrum(rho)
        fields.update(magic=magic_renyi2(spectrum), magic_bounds=magic_bounds(spectrum))
    LOGGER.debug("Resources of %s state: %s", rho.dims, fields)
    return ResourceReport(**fields)


__all__ = [
    "MorelliMargins",
    "chsh_flags",
    "chsh_max",
    "discord_bounds",
    "geometric_discord_2q",
    "magic_bounds",
    "magic_budget_bounds",
    "magic_renyi2",
    "morelli_check",
    "negativity",
    "negativity_ceiling",
    "resource_report",
    "steering_ls3",
]
