"""Numeric all-classical envelope from the discrete marginal problem.

A classical (diagonal) state is a joint distribution ``p`` over the ``D``
outcomes. Its budgets depend on ``sum p^2`` and on the marginal distributions
only, so the envelope at local budget ``b`` is the maximum of
``D sum p^2 - 1 - b`` over distributions with ``B_L(p) = b``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq, minimize
from tqdm import tqdm

from ..config import AppConfig, load_config
from ..errors import DomainError
from ..linalg import DimensionProfile
from ..states.ensembles import stream_rng
from .curves import EnvelopeCurve, polyline

LOGGER = logging.getLogger(__name__)

FEASIBILITY_TOLERANCE = 1e-8


@dataclass(frozen=True)
class ClassicalPoint:
    local_budget: float
    nonlocal_budget: float
    distribution: np.ndarray
    converged: bool


class MarginalProblem:
    """Budgets of joint distributions on a fixed dimension profile."""

    def __init__(self, dims: DimensionProfile) -> None:
        self.dims = dims
        self.D = dims.D
        self.max_local = float(sum(d - 1 for d in dims))

    # ---- public

    def marginals(self, p: np.ndarray) -> List[np.ndarray]:
        tensor = p.reshape(self.dims.dims)
        axes = range(self.dims.n)
        return [tensor.sum(axis=tuple(a for a in axes if a != k)) for k in axes]

    def local_budget(self, p: np.ndarray) -> float:
        return float(sum(d * np.dot(m, m) - 1.0 for d, m in zip(self.dims, self.marginals(p))))

    def local_gradient(self, p: np.ndarray) -> np.ndarray:
        grad = np.zeros(self.dims.dims)
        for k, (d, m) in enumerate(zip(self.dims, self.marginals(p))):
            shape = [1] * self.dims.n
            shape[k] = d
            grad = grad + 2.0 * d * m.reshape(shape)
        return grad.reshape(-1)

    def total_budget(self, p: np.ndarray) -> float:
        return float(self.D * np.dot(p, p) - 1.0)

    def nonlocal_budget(self, p: np.ndarray) -> float:
        return self.total_budget(p) - self.local_budget(p)

    def is_feasible(self, p: np.ndarray, target: float) -> bool:
        return (
            p.min() >= -1e-10
            and abs(p.sum() - 1.0) <= 1e-9
            and abs(self.local_budget(p) - target) <= FEASIBILITY_TOLERANCE
        )

    def uniform_marginal_constraints(self) -> List[dict]:
        rows = []
        for k, d in enumerate(self.dims):
            for level in range(d - 1):
                mask = np.zeros(self.dims.dims)
                index = [slice(None)] * self.dims.n
                index[k] = level
                mask[tuple(index)] = 1.0
                rows.append(mask.reshape(-1))
        matrix = np.array(rows)
        targets = np.array([1.0 / d for d in self.dims for _ in range(d - 1)])
        return [{"type": "eq", "fun": lambda p: matrix @ p - targets, "jac": lambda p: matrix}]

    def maximise(self, start: np.ndarray, target: float) -> Tuple[np.ndarray, bool]:
        """SLSQP ascent of ``sum p^2`` on the simplex at pinned ``B_L``."""

        constraints = [{"type": "eq", "fun": lambda p: p.sum() - 1.0, "jac": lambda p: np.ones_like(p)}]
        if target <= 0.0:
            constraints += self.uniform_marginal_constraints()
        else:
            constraints.append(
                {
                    "type": "eq",
                    "fun": lambda p: self.local_budget(p) - target,
                    "jac": self.local_gradient,
                }
            )
        result = minimize(
            lambda p: -np.dot(p, p),
            start,
            jac=lambda p: -2.0 * p,
            method="SLSQP",
            bounds=[(0.0, 1.0)] * self.D,
            constraints=constraints,
            options={"maxiter": 500, "ftol": 1e-14},
        )
        p = np.clip(result.x, 0.0, None)
        p = p / p.sum()
        return p, bool(result.success)

    # ---- seeds

    def peaked_seeds(self, base: np.ndarray, target: float) -> List[np.ndarray]:
        """Mixtures ``(1 - e) base + e delta_x`` placed on ``B_L = target`` by root finding."""

        start_value = self.local_budget(base) - target
        if abs(start_value) <= FEASIBILITY_TOLERANCE:
            return [base.copy()]
        if start_value > 0.0:
            return []
        seeds = []
        for x in range(self.D):
            delta = np.zeros(self.D)
            delta[x] = 1.0

            def gap(eps: float) -> float:
                return self.local_budget((1.0 - eps) * base + eps * delta) - target

            if gap(1.0) < 0.0:
                continue
            eps = brentq(gap, 0.0, 1.0, xtol=1e-15)
            seeds.append((1.0 - eps) * base + eps * delta)
        return seeds


def _compositions(total: int, parts: int) -> np.ndarray:
    """All non-negative integer vectors of length ``parts`` summing to ``total``."""

    if parts == 1:
        return np.array([[total]])
    bars = np.array(list(combinations(range(total + parts - 1), parts - 1)), dtype=int)
    edges = np.hstack([-np.ones((len(bars), 1), dtype=int), bars, np.full((len(bars), 1), total + parts - 1)])
    return np.diff(edges, axis=1) - 1


def oracle_max_nonlocal(
    dims: DimensionProfile | Iterable[int] | str,
    local_budget: float = 0.0,
    step: int = 24,
    tolerance: float = 1e-12,
) -> Tuple[float, np.ndarray]:
    """Brute-force maximum over the simplex grid with spacing ``1/step``.

    Exact at ``local_budget = 0`` whenever every local dimension divides ``step``.
    """

    dims = DimensionProfile.of(dims)
    counts = _compositions(step, dims.D)
    tensor = counts.reshape((len(counts),) + dims.dims)
    local = np.zeros(len(counts))
    for k, d in enumerate(dims):
        axes = tuple(a + 1 for a in range(dims.n) if a != k)
        marginal = tensor.sum(axis=axes)
        local += d * np.sum(marginal.astype(float) ** 2, axis=1) / step**2 - 1.0
    mask = np.abs(local - local_budget) <= tolerance
    if not np.any(mask):
        raise DomainError(f"no grid distribution with B_L = {local_budget} at step 1/{step}")
    total = dims.D * np.sum(counts.astype(float) ** 2, axis=1) / step**2 - 1.0
    nonlocal_values = np.where(mask, total - local, -np.inf)
    best = int(np.argmax(nonlocal_values))
    return float(nonlocal_values[best]), counts[best] / step


def _default_grid(problem: MarginalProblem, size: int) -> np.ndarray:
    return np.linspace(0.0, problem.max_local, size)


def _best_point(
    problem: MarginalProblem,
    target: float,
    starts: Sequence[np.ndarray],
) -> ClassicalPoint:
    best_value, best_p, converged = -np.inf, None, False
    for start in starts:
        if problem.is_feasible(start, target):
            value = problem.nonlocal_budget(start)
            if value > best_value:
                best_value, best_p = value, start
        p, ok = problem.maximise(start, target)
        if problem.is_feasible(p, target):
            value = problem.nonlocal_budget(p)
            if value > best_value:
                best_value, best_p, converged = value, p, ok
    if best_p is None:
        raise DomainError(f"no feasible classical distribution found at B_L = {target}")
    return ClassicalPoint(target, float(best_value), best_p, converged)


def cn_envelope(
    dims: DimensionProfile | Iterable[int] | str,
    grid: Optional[Sequence[float]] = None,
    config: Optional[AppConfig] = None,
    starts: Optional[int] = None,
) -> EnvelopeCurve:
    """All-classical envelope sampled on a grid of local budgets.

    Each grid value is the best of multi-start SLSQP, structured peaked seeds
    and the optimum of the previous grid point; a second pass re-optimises
    every point from its neighbours' optima. Per-point values, distributions
    and convergence flags are kept in ``curve.notes``.
    """

    config = config or load_config()
    dims = DimensionProfile.of(dims)
    problem = MarginalProblem(dims)
    grid_values = np.asarray(grid if grid is not None else _default_grid(problem, config.envelopes.cn_grid), dtype=float)
    if grid_values.min() < 0.0 or grid_values.max() > problem.max_local + 1e-12:
        raise DomainError(f"grid must lie within [0, {problem.max_local}] for {dims}")
    grid_values = np.sort(np.clip(grid_values, 0.0, problem.max_local))
    n_starts = starts or config.envelopes.cn_starts
    rng = stream_rng(config.sampling.seed, "cn-envelope", *dims.dims)
    uniform = np.full(dims.D, 1.0 / dims.D)

    base = _best_point(problem, 0.0, [uniform] + [rng.dirichlet(np.ones(dims.D)) for _ in range(n_starts)]).distribution
    points: List[ClassicalPoint] = []
    previous: Optional[np.ndarray] = None
    for target in tqdm(grid_values, desc=f"C envelope {dims}", disable=not config.sampling.progress):
        seeds = problem.peaked_seeds(base, target) + problem.peaked_seeds(uniform, target)
        candidates = seeds + [rng.dirichlet(np.ones(dims.D)) for _ in range(n_starts)]
        if previous is not None:
            candidates.append(previous)
        point = _best_point(problem, float(target), candidates)
        points.append(point)
        previous = point.distribution

    for i, point in enumerate(points):
        neighbours = [points[j].distribution for j in (i - 1, i + 1) if 0 <= j < len(points)]
        retry = _best_point(problem, point.local_budget, neighbours + [point.distribution])
        if retry.nonlocal_budget > point.nonlocal_budget + 1e-12:
            LOGGER.debug("Neighbour pass raised B_NL at B_L=%.4g by %.3e", point.local_budget, retry.nonlocal_budget - point.nonlocal_budget)
            points[i] = retry

    unconverged = sum(1 for p in points if not p.converged)
    if unconverged:
        LOGGER.warning("C envelope on %s: %d of %d grid points kept a seed value", dims, unconverged, len(points))
    curve = polyline("C", "budget", [(p.local_budget, p.nonlocal_budget) for p in points], dims=dims)
    curve.notes.update(
        grid=[p.local_budget for p in points],
        values=[p.nonlocal_budget for p in points],
        converged=[p.converged for p in points],
        distributions=[p.distribution for p in points],
    )
    return curve


def classical_nonlocal_at(dims: DimensionProfile, local_budget: float, config: Optional[AppConfig] = None) -> float:
    curve = cn_envelope(dims, grid=[local_budget], config=config)
    return curve.notes["values"][0]


def exact_oracle_at_zero(dims: DimensionProfile | Iterable[int] | str, step: int = 24) -> Fraction:
    value, _ = oracle_max_nonlocal(dims, 0.0, step)
    return Fraction(value).limit_denominator(step * step)


__all__ = [
    "ClassicalPoint",
    "MarginalProblem",
    "classical_nonlocal_at",
    "cn_envelope",
    "exact_oracle_at_zero",
    "oracle_max_nonlocal",
]
