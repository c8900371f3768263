"""Acceptance suites run by ``budgetlab verify``.

Each suite returns a :class:`VerificationReport` made of named checks. Sample
sizes default to ``config.sampling.count`` and can be lowered for quick runs.
"""

from __future__ import annotations

import logging
import math
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import numpy as np

from .budget import budget_decompose, rationalize
from .channels.flows import arrow_check, purification_path, sweep
from .channels.kraus import SURVEY_KINDS
from .config import AppConfig, load_config
from .envelopes.classical import cn_envelope, oracle_max_nonlocal
from .envelopes.hierarchy import TierSpec, qc_envelope
from .envelopes.regions import REGION_TOLERANCE, classify
from .envelopes.walls import feasibility_wall, trace_wall
from .errors import UsageError
from .linalg import DimensionProfile
from .resources.measures import (
    chsh_max,
    discord_bounds,
    geometric_discord_2q,
    magic_bounds,
    magic_renyi2,
    negativity,
    negativity_ceiling,
    steering_ls3,
)
from .resources.profiles import max_profile
from .schemas import VerificationReport
from .states.canonical import CanonicalParams, canonical_eigenvalues
from .states.decompositions import TWO_QUBITS, fano_decompose, pauli_spectrum
from .states.density import from_ket, product_state
from .states.ensembles import METHOD_FAMILIES, sample_family, sample_werner
from .states.library import parse_state_spec

LOGGER = logging.getLogger(__name__)

ARROW_STATES = ("bell", "chsh", "mixed-entangled", "product", "mixed-separable", "classical")

VERTEX_ORACLE: Dict[str, tuple] = {
    "2x2 QC:1": ((2, 2), 1, [(0, 1), (2, 1)]),
    "2x3 QC:1": ((2, 3), 1, [(0, 1), (Fraction(1, 2), Fraction(3, 2)), (3, 2)]),
    "3x3 QC:1": ((3, 3), 1, [(0, 2), (4, 4)]),
    "2x2x2 QC:1": ((2, 2, 2), 1, [(0, 3), (3, 4)]),
    "2x2x2 QC:2": ((2, 2, 2), 2, [(0, 3), (1, 6)]),
}


# (profile, 2X^2 + Y^2 on the wall, X^2 where it meets the floor)
WALL_ARCS = (
    ((3, 3), 1.5, 0.75),
    ((2, 3), 1.6, 0.8),
)


def _count(config: AppConfig, count: Optional[int]) -> int:
    return int(count) if count is not None else config.sampling.count


# ---- suites


def verify_region(config: AppConfig, count: Optional[int] = None) -> VerificationReport:
    report = VerificationReport(suite="region")
    tol = config.tolerances
    n = _count(config, count)
    for family in METHOD_FAMILIES:
        worst_x2 = worst_r = -math.inf
        worst_q = math.inf
        worst_classical = -math.inf
        unphysical = 0
        for i, rho in enumerate(sample_family(family, TWO_QUBITS, n, config)):
            point = budget_decompose(rho, tol)
            worst_x2 = max(worst_x2, point.X**2)
            worst_r = max(worst_r, point.R)
            worst_q = min(worst_q, point.Q)
            if family == "classical":
                worst_classical = max(worst_classical, point.B_NL)
            if i < 1000 and classify(point, TWO_QUBITS, config).unphysical:
                unphysical += 1
        report.add(f"{family}: X^2 <= 2/3", worst_x2 <= 2.0 / 3.0 + REGION_TOLERANCE, f"max X^2 = {worst_x2:.12g}", worst_x2)
        report.add(f"{family}: R <= 1", worst_r <= 1.0 + tol.budget_clamp, f"max R = {worst_r:.12g}", worst_r)
        report.add(f"{family}: Q >= 0", worst_q >= -tol.budget_clamp, f"min Q = {worst_q:.3e}", worst_q)
        report.add(f"{family}: classified physical", unphysical == 0, f"{unphysical} unphysical flags")
        if family == "classical":
            report.add("classical: B_NL <= 1", worst_classical <= 1.0 + 1e-9, f"max B_NL = {worst_classical:.12g}", worst_classical)
    return report


def verify_holes(config: AppConfig, grid: int = 200, cells: int = 50) -> VerificationReport:
    """Canonical ``(mu, alpha)`` grid: every state valid, every feasible ``(X, Y)`` cell reached.

    The rationalised plane is cut into ``cells x cells`` boxes over
    ``[0, sqrt(2/3)] x [0, 1]``; a box counts as feasible when its centre has
    ``X^2 <= 2/3``, ``R <= 1`` and ``Q >= 0`` (the last coincides with the
    first on two qubits).
    """

    report = VerificationReport(suite="holes")
    tol = config.tolerances
    mus = np.linspace(0.0, 1.0, grid)
    alphas = np.linspace(0.0, math.pi / 2.0, grid)
    min_eig = math.inf
    hit = np.zeros((cells, cells), dtype=bool)
    x_step, y_step = math.sqrt(2.0 / 3.0) / cells, 1.0 / cells
    for mu in mus:
        for alpha in alphas:
            params = CanonicalParams(float(mu), float(alpha))
            min_eig = min(min_eig, float(canonical_eigenvalues(params).min()))
            bl, bnl = params.budgets()
            x, y, _, _ = rationalize(bl, bnl, (1.0 + bl + bnl) / TWO_QUBITS.D, TWO_QUBITS, tol)
            hit[min(int(x / x_step), cells - 1), min(int(y / y_step), cells - 1)] = True
    centres_x = (np.arange(cells) + 0.5) * x_step
    centres_y = (np.arange(cells) + 0.5) * y_step
    cx, cy = np.meshgrid(centres_x, centres_y, indexing="ij")
    feasible = (cx**2 <= 2.0 / 3.0) & (cx**2 + cy**2 <= 1.0)
    missing = int(np.count_nonzero(feasible & ~hit))
    report.add("canonical grid is PSD", min_eig >= -tol.psd, f"min eigenvalue {min_eig:.3e}", min_eig)
    report.add(
        "feasible cells reached",
        missing == 0,
        f"{missing} of {int(feasible.sum())} feasible cells missed",
        float(missing),
    )
    return report


def verify_vertices(config: AppConfig) -> VerificationReport:
    report = VerificationReport(suite="vertices")
    for name, (dims, m, expected) in VERTEX_ORACLE.items():
        vertices = qc_envelope(TierSpec(DimensionProfile(dims), m)).exact_vertices()
        want = [(Fraction(x), Fraction(y)) for x, y in expected]
        report.add(name, vertices == want, f"got {[(str(x), str(y)) for x, y in vertices]}")
    return report


def verify_c2(config: AppConfig) -> VerificationReport:
    """Qubit-qutrit C envelope: axis value against the oracle and square-root growth."""

    report = VerificationReport(suite="c2")
    dims = DimensionProfile((2, 3))
    oracle, _ = oracle_max_nonlocal(dims, 0.0, config.envelopes.oracle_step)
    grid = [0.0] + list(np.logspace(-4, -2, 5))
    curve = cn_envelope(dims, grid=grid, config=config)
    values = curve.notes["values"]
    report.add("oracle at B_L = 0 is 2/3", abs(oracle - 2.0 / 3.0) <= 1e-12, f"oracle {oracle:.12g}", oracle)
    report.add("C envelope matches the oracle", abs(values[0] - oracle) <= 1e-3, f"C(0) = {values[0]:.12g}", values[0])
    rise = np.array(values[1:]) - values[0]
    if np.all(rise > 0):
        slope = float(np.polyfit(np.log(grid[1:]), np.log(rise), 1)[0])
    else:
        slope = math.nan
    report.add("near-axis growth exponent in [0.4, 0.6]", 0.4 <= slope <= 0.6, f"fitted exponent {slope:.4f}", slope)
    return report


def verify_bounds(config: AppConfig, count: Optional[int] = None) -> VerificationReport:
    report = VerificationReport(suite="bounds")
    n = _count(config, count)
    failures: Dict[str, int] = {
        "negativity ceiling": 0,
        "discord chain": 0,
        "magic bracket": 0,
        "CHSH impossible at B_NL <= 1": 0,
        "CHSH guaranteed at B_NL > 3/2": 0,
        "steerable iff above C": 0,
        "two correlations above C": 0,
    }
    for rho in sample_family("wishart", TWO_QUBITS, n, config):
        point = budget_decompose(rho, config.tolerances)
        if negativity(rho) > negativity_ceiling(point.R) + 1e-9:
            failures["negativity ceiling"] += 1
        lower, tight, absolute = discord_bounds(rho)
        value = geometric_discord_2q(rho)
        if not lower - 1e-9 <= value <= min(tight, absolute) + 1e-9:
            failures["discord chain"] += 1
        spectrum = pauli_spectrum(rho)
        low, high = magic_bounds(spectrum)
        if not low - 1e-9 <= magic_renyi2(spectrum) <= high + 1e-9:
            failures["magic bracket"] += 1
        bell_value = chsh_max(rho)
        if point.B_NL <= 1.0 and bell_value > 2.0 + 1e-9:
            failures["CHSH impossible at B_NL <= 1"] += 1
        if point.B_NL > 1.5 and bell_value <= 2.0:
            failures["CHSH guaranteed at B_NL > 3/2"] += 1
        _, steerable = steering_ls3(rho)
        if steerable != (point.B_NL > 1.0):
            failures["steerable iff above C"] += 1
        if point.B_NL > 1.0 and np.count_nonzero(fano_decompose(rho).tsv > 1e-8) < 2:
            failures["two correlations above C"] += 1
    for name, bad in failures.items():
        report.add(name, bad == 0, f"{bad} violations in {n} Wishart states", float(bad))

    worst = max((geometric_discord_2q(rho) for rho in sample_family("classical", TWO_QUBITS, min(n, 1000), config)), default=0.0)
    report.add("classical states carry no discord", worst < 1e-10, f"max D_G = {worst:.3e}", worst)

    zero = from_ket(np.array([1.0, 0.0]), (2,))
    drift = 0.0
    for rho in sample_family("wishart", TWO_QUBITS, min(n, 100), config):
        drift = max(drift, abs(magic_renyi2(product_state(rho, zero)) - magic_renyi2(rho)))
    report.add("magic additive under stabiliser tensoring", drift <= 1e-10, f"max change {drift:.3e}", drift)
    return report


def verify_known_values(config: AppConfig) -> VerificationReport:
    report = VerificationReport(suite="known-values")
    bell = parse_state_spec("bell")
    point = budget_decompose(bell)
    checks = {
        "Bell negativity 1/2": (negativity(bell), 0.5),
        "Bell discord 1/2": (geometric_discord_2q(bell), 0.5),
        "Bell CHSH 2 sqrt 2": (chsh_max(bell), 2.0 * math.sqrt(2.0)),
        "Bell magic 0": (magic_renyi2(bell), 0.0),
        "Bell Q = 1": (point.Q, 1.0),
        "Werner 1/sqrt2 on the guarantee line": (budget_decompose(sample_werner(1.0 / math.sqrt(2.0))).B_NL, 1.5),
        "negativity ceiling at R = 1/3": (negativity_ceiling(1.0 / 3.0), 0.0),
    }
    for name, (got, want) in checks.items():
        report.add(name, abs(got - want) <= 1e-10, f"{got:.15g} vs {want:.15g}", got)
    return report


def verify_walls(config: AppConfig) -> VerificationReport:
    """Traced walls against the closed-form arcs."""

    report = VerificationReport(suite="walls")
    for dims, c, floor_x2 in WALL_ARCS:
        traced = trace_wall(dims, config)
        stage = [s.point for s in traced.trajectory.samples if s.stage == 0]
        residual = max(abs(2.0 * p.X**2 + p.Y**2 - c) for p in stage)
        label = str(DimensionProfile(dims))
        report.add(f"{label} wall on 2X^2 + Y^2 = {c:g}", residual < 1e-8, f"max residual {residual:.3e}", residual)
        end = stage[-1].X ** 2
        report.add(f"{label} wall meets the floor at X^2 = {floor_x2:g}", abs(end - floor_x2) < 1e-8, f"X^2 = {end:.12g}", end)

    traced = trace_wall((2, 2, 2), config)
    roof = [s.point for s in traced.trajectory.samples if s.stage == 0]
    cliff = [s.point for s in traced.trajectory.samples if s.stage == 1]
    roof_residual = max(abs(2.0 * p.X**2 + p.Y**2 - 10.0 / 7.0) for p in roof)
    cliff_residual = max(abs(p.X**2 - 4.0 / 7.0) for p in cliff)
    slope_residual = max(abs(p.B_NL - (p.B_L - 1.0)) for p in cliff)
    report.add("2x2x2 roof on 2X^2 + Y^2 = 10/7", roof_residual < 1e-8, f"max residual {roof_residual:.3e}", roof_residual)
    report.add("2x2x2 slope-one segment B_NL = B_L - 1", slope_residual < 1e-8, f"max residual {slope_residual:.3e}", slope_residual)
    report.add("2x2x2 cliff at X^2 = 4/7", cliff_residual < 1e-8, f"max residual {cliff_residual:.3e}", cliff_residual)
    exact = feasibility_wall((2, 2, 2)).exact_vertices()
    report.add("2x2x2 exact junctions", exact == [(3, 4), (2, 1), (1, 0)], f"got {[(str(x), str(y)) for x, y in exact]}")
    return report


def verify_arrow(config: AppConfig) -> VerificationReport:
    report = VerificationReport(suite="arrow")
    tolerance = config.tolerances.arrow
    total = 0
    for name in ARROW_STATES:
        rho = parse_state_spec(name)
        for kind in SURVEY_KINDS:
            trajectory = sweep(rho, kind, None, config.trajectories.steps, state_label=name, config=config)
            violations = arrow_check(trajectory, tolerance)
            total += len(violations)
            if violations:
                LOGGER.warning("Arrow violated by %s under %s at steps %s", name, kind, violations)
    pairs = len(ARROW_STATES) * len(SURVEY_KINDS)
    report.add("no channel raises P and Q together", total == 0, f"{total} violations over {pairs} trajectories", float(total))
    path = purification_path(parse_state_spec("mixed-entangled"), state_label="mixed-entangled", config=config)
    found = len(arrow_check(path, tolerance))
    report.add("purification breaks the arrow", found >= 1, f"{found} simultaneous rises", float(found))
    return report


def verify_profiles(config: AppConfig, thetas: int = 5) -> VerificationReport:
    report = VerificationReport(suite="profiles")
    light = config.model_copy(deep=True)
    light.profiles.budget = min(light.profiles.budget, 8)
    light.profiles.climb_steps = min(light.profiles.climb_steps, 25)
    light.profiles.projection_steps = min(light.profiles.projection_steps, 200)
    top = max_profile(TWO_QUBITS, 1.0, [math.pi / 2.0], "negativity", config=light)
    value = top.points[0].value
    report.add("Bell point reaches negativity 1/2", value >= 0.5 - 1e-6, f"best {value:.12g}", value)
    floor = max_profile(TWO_QUBITS, 1.0 / 3.0, np.linspace(0.05, math.pi / 2.0 - 0.05, thetas), "negativity", config=light)
    reached = [p.value for p in floor.points if p.found]
    report.add("R = 1/3 shell reached", len(reached) == len(floor.points), f"{len(reached)} of {len(floor.points)} angles")
    worst = max(reached, default=math.nan)
    report.add("no negativity at R = 1/3", worst <= 1e-10, f"max {worst:.3e}", worst)
    over = sum(1 for p in top.points + floor.points if p.found and p.value > p.ceiling + 1e-9)
    report.add("profile points below the ceiling", over == 0, f"{over} points above", float(over))
    return report


SUITES: Dict[str, Callable[[AppConfig], VerificationReport]] = {
    "region": verify_region,
    "holes": verify_holes,
    "vertices": verify_vertices,
    "c2": verify_c2,
    "bounds": verify_bounds,
    "known-values": verify_known_values,
    "walls": verify_walls,
    "arrow": verify_arrow,
    "profiles": verify_profiles,
}


def run_suite(name: str, config: Optional[AppConfig] = None) -> List[VerificationReport]:
    """Run one suite (or ``all``) and time each report."""

    config = config or load_config()
    names = list(SUITES) if name == "all" else [name]
    reports = []
    for suite in names:
        if suite not in SUITES:
            raise UsageError(f"unknown suite '{suite}', choose from {', '.join(SUITES)} or all")
        started = time.perf_counter()
        report = SUITES[suite](config)
        report.elapsed_seconds = time.perf_counter() - started
        LOGGER.info("Suite %s: %s in %.1fs", suite, "passed" if report.passed else "FAILED", report.elapsed_seconds)
        reports.append(report)
    return reports


__all__ = ["ARROW_STATES", "SUITES", "VERTEX_ORACLE", "run_suite"] + [f.__name__ for f in SUITES.values()]
