"""Maximal-resource profiles along a fixed-purity shell.

For a squared radius ``R`` and each allocation angle ``theta`` the search looks
for the largest negativity (or magic) among states whose rationalised point
lies in the window ``R - tol <= R' <= R`` and ``|theta' - theta| < tol``. Seeds
come from the canonical two-qubit construction and from Wishart draws pulled
onto the shell; each seed is then improved by a multiplicative hill-climb
``A -> sqrt(rho) (1 + eps G)``. Values are lower bounds on the true maximum.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import minimize
from tqdm import tqdm

from ..config import AppConfig, load_config
from ..errors import DimensionError, DomainError, UsageError, ValidationFailure
from ..linalg import DimensionProfile, dagger, herm_eig, partial_trace
from ..states.canonical import canonical_params_for_xy, canonical_two_qubit
from ..states.decompositions import TWO_QUBITS, pauli_spectrum
from ..states.density import DensityMatrix, validate
from ..states.ensembles import random_local_unitary, sample_wishart, stream_rng
from .measures import magic_budget_bounds, magic_renyi2, negativity, negativity_ceiling

LOGGER = logging.getLogger(__name__)

PROFILE_TARGETS = ("negativity", "magic")
PROFILE_COLUMNS = ["theta", "value", "ceiling", "found", "seeds"]


@dataclass(frozen=True)
class ProfilePoint:
    theta: float
    value: float
    ceiling: Optional[float]
    found: bool
    seeds: int


@dataclass
class Profile:
    target: str
    dims: DimensionProfile
    R: float
    points: List[ProfilePoint] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([vars(p) for p in self.points], columns=PROFILE_COLUMNS)


def shell_coordinates(mat: np.ndarray, dims: DimensionProfile) -> Tuple[float, float]:
    """``(R, theta)`` of a raw density matrix; ``theta`` is ``nan`` at the origin."""

    P = float(np.real(np.einsum("ij,ji->", mat, mat)))
    local = 0.0
    for k, d in enumerate(dims):
        reduced = partial_trace(mat, dims, [k])
        local += d * float(np.real(np.einsum("ij,ji->", reduced, reduced))) - 1.0
    total = dims.D * P - 1.0
    scale = (dims.D - 1) * P
    nonlocal_part = total - local
    if total <= 1e-14:
        return 0.0, math.nan
    return total / scale, math.atan2(math.sqrt(max(nonlocal_part, 0.0)), math.sqrt(max(local, 0.0)))


def _state_from_params(params: np.ndarray, D: int) -> np.ndarray:
    a = (params[: D * D] + 1j * params[D * D :]).reshape(D, D)
    mat = a @ dagger(a)
    return mat / np.trace(mat).real


def _params_from_factor(a: np.ndarray) -> np.ndarray:
    flat = a.reshape(-1)
    return np.concatenate([flat.real, flat.imag])


def _sqrt_psd(mat: np.ndarray) -> np.ndarray:
    values, vecs = herm_eig(mat, vectors=True)
    return (vecs * np.sqrt(np.clip(values, 0.0, None))) @ dagger(vecs)


@dataclass(frozen=True)
class Shell:
    dims: DimensionProfile
    R: float
    theta: float
    tolerance: float

    def contains(self, mat: np.ndarray) -> bool:
        R, theta = shell_coordinates(mat, self.dims)
        return self.R - self.tolerance <= R <= self.R + 1e-12 and abs(theta - self.theta) < self.tolerance

    def project(self, factor: np.ndarray, steps: int) -> Optional[np.ndarray]:
        """Pull ``factor factor^dagger`` onto the window by L-BFGS on the squared offset."""

        target_r = self.R - 0.5 * self.tolerance if self.R < 1.0 else self.R - 0.25 * self.tolerance
        D = self.dims.D

        def offset(params: np.ndarray) -> float:
            R, theta = shell_coordinates(_state_from_params(params, D), self.dims)
            if math.isnan(theta):
                theta = 0.0
            return (R - target_r) ** 2 + (theta - self.theta) ** 2

        result = minimize(offset, _params_from_factor(factor), method="L-BFGS-B", options={"maxiter": max(int(steps), 1)})
        mat = _state_from_params(result.x, D)
        return mat if self.contains(mat) else None


def _objective(target: str, dims: DimensionProfile) -> Callable[[DensityMatrix], float]:
    if target == "negativity":
        if dims.n < 2:
            raise DimensionError("negativity profiles need at least two subsystems")
        return lambda rho: negativity(rho, 0)
    if target == "magic":
        if not dims.is_qubits:
            raise DimensionError(f"magic profiles need qubits, got profile {dims}")
        return lambda rho: magic_renyi2(pauli_spectrum(rho))
    raise UsageError(f"unknown profile target '{target}', choose from {', '.join(PROFILE_TARGETS)}")


def profile_ceiling(target: str, dims: DimensionProfile, R: float) -> Optional[float]:
    """Analytic ceiling at the outer edge ``R`` of the window, when one is known."""

    if target == "negativity":
        return negativity_ceiling(R) if dims == TWO_QUBITS else None
    P = 1.0 / (dims.D - (dims.D - 1) * R)
    return magic_budget_bounds(dims.D * P - 1.0, dims.n)[1]


def _canonical_seed(shell: Shell) -> Optional[np.ndarray]:
    if shell.dims != TWO_QUBITS:
        return None
    x, y = math.sqrt(shell.R) * math.cos(shell.theta), math.sqrt(shell.R) * math.sin(shell.theta)
    try:
        return canonical_two_qubit(canonical_params_for_xy(x, y)).mat
    except (DomainError, ValidationFailure):
        return None


def _seed_factors(shell: Shell, budget: int, fraction: float, scale: float, rng: np.random.Generator) -> List[np.ndarray]:
    """Factors ``A`` with ``A A^dagger`` proportional to a seed state."""

    factors: List[np.ndarray] = []
    canonical = _canonical_seed(shell)
    n_canonical = int(round(budget * fraction)) if canonical is not None else 0
    if canonical is not None:
        root = _sqrt_psd(canonical)
        factors.append(root)
        for _ in range(max(n_canonical - 1, 0)):
            u = random_local_unitary(shell.dims, rng)
            g = rng.standard_normal((shell.dims.D,) * 2) + 1j * rng.standard_normal((shell.dims.D,) * 2)
            factors.append(u @ root @ dagger(u) @ (np.eye(shell.dims.D) + scale * g))
    for _ in range(max(budget - len(factors), 0)):
        factors.append(_sqrt_psd(sample_wishart(shell.dims, rng).mat))
    return factors


def _climb(
    shell: Shell,
    mat: np.ndarray,
    value_of: Callable[[DensityMatrix], float],
    steps: int,
    scale: float,
    projection_steps: int,
    rng: np.random.Generator,
) -> Tuple[np.ndarray, float]:
    best_mat = mat
    best_value = value_of(validate(mat, shell.dims))
    for _ in range(int(steps)):
        g = rng.standard_normal((shell.dims.D,) * 2) + 1j * rng.standard_normal((shell.dims.D,) * 2)
        proposal = _sqrt_psd(best_mat) @ (np.eye(shell.dims.D) + scale * g)
        candidate = proposal @ dagger(proposal)
        candidate = candidate / np.trace(candidate).real
        if not shell.contains(candidate):
            projected = shell.project(proposal, projection_steps)
            if projected is None:
                continue
            candidate = projected
        value = value_of(validate(candidate, shell.dims))
        if value > best_value:
            best_mat, best_value = candidate, value
    return best_mat, best_value


def max_profile(
    dims: DimensionProfile | Iterable[int] | str,
    R: float,
    thetas: Sequence[float],
    target: str = "negativity",
    budget: Optional[int] = None,
    config: Optional[AppConfig] = None,
) -> Profile:
    """Best value found on each ``(R, theta)`` shell window.

    Every angle draws from its own random stream ``("profile", i)``, so the
    result for one angle does not depend on the rest of the grid.
    """

    config = config or load_config()
    settings = config.profiles
    dims = DimensionProfile.of(dims)
    if not 0.0 < R <= 1.0:
        raise DomainError(f"R = {R} outside (0, 1]")
    value_of = _objective(target, dims)
    budget = budget or settings.budget
    ceiling = profile_ceiling(target, dims, R)
    profile = Profile(target=target, dims=dims, R=float(R))
    for i, theta in enumerate(tqdm(list(thetas), desc=f"{target} profile", disable=not config.sampling.progress)):
        theta = float(theta)
        if not 0.0 <= theta <= math.pi / 2.0:
            raise DomainError(f"theta = {theta} outside [0, pi/2]")
        rng = stream_rng(config.sampling.seed, "profile", i)
        shell = Shell(dims=dims, R=float(R), theta=theta, tolerance=settings.shell_tolerance)
        best, seeds = -math.inf, 0
        for factor in _seed_factors(shell, budget, settings.canonical_fraction, settings.perturbation, rng):
            mat = factor @ dagger(factor)
            mat = mat / np.trace(mat).real
            if not shell.contains(mat):
                mat = shell.project(factor, settings.projection_steps)
                if mat is None:
                    continue
            seeds += 1
            _, value = _climb(shell, mat, value_of, settings.climb_steps, settings.perturbation, settings.projection_steps, rng)
            best = max(best, value)
        found = seeds > 0
        if not found:
            LOGGER.warning("No seed reached the shell R=%.4g theta=%.4g", R, theta)
        value = best if found else math.nan
        if found and ceiling is not None and value > ceiling + 1e-9:
            LOGGER.warning("Profile value %.6g exceeds the ceiling %.6g at theta=%.4g", value, ceiling, theta)
        profile.points.append(ProfilePoint(theta=theta, value=value, ceiling=ceiling, found=found, seeds=seeds))
        LOGGER.debug("theta=%.4f: best %s %.6g from %d seeds", theta, target, value, seeds)
    return profile


__all__ = [
    "PROFILE_COLUMNS",
    "PROFILE_TARGETS",
    "Profile",
    "ProfilePoint",
    "Shell",
    "max_profile",
    "profile_ceiling",
    "shell_coordinates",
]
