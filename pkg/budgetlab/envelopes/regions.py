"""Point-in-region classification against every boundary of a profile."""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, Iterable, List, Optional

from ..budget import BudgetPoint
from ..config import AppConfig, load_config
from ..linalg import DimensionProfile
from ..schemas import RegionReport
from .analytic import (
    QUBIT_QUTRIT,
    chsh_guarantee_curve,
    classical_envelope_curve_2q,
    frustrated_curve_23,
    separability_curve,
)
from .classical import cn_envelope
from .curves import EnvelopeCurve
from .hierarchy import TierSpec, qc_envelope
from .walls import feasibility_wall

LOGGER = logging.getLogger(__name__)

REGION_TOLERANCE = 1e-8
CHSH_GUARANTEE = 1.5
TWO_QUBITS = DimensionProfile((2, 2))
FRUSTRATED_START = 2.0
FRUSTRATED_END = 4.5

FLAGS = (
    "unphysical",
    "absolutely-separable",
    "classically-feasible",
    "guaranteed-discord",
    "guaranteed-npt",
    "guaranteed-gme",
    "steerable-guaranteed",
    "chsh-possible",
    "chsh-guaranteed",
)


@lru_cache(maxsize=32)
def _classical_boundary(dims: DimensionProfile, grid: int, starts: int, seed: int) -> EnvelopeCurve:
    if dims == TWO_QUBITS:
        return classical_envelope_curve_2q()
    config = AppConfig()
    config.sampling.seed = seed
    LOGGER.info("Building the cached C envelope for %s (%d grid points)", dims, grid)
    return cn_envelope(dims, grid=_grid(dims, grid), config=config, starts=starts)


def _grid(dims: DimensionProfile, size: int) -> List[float]:
    top = float(sum(d - 1 for d in dims))
    return [top * i / (size - 1) for i in range(size)]


@lru_cache(maxsize=64)
def _tier_boundaries(dims: DimensionProfile) -> Dict[int, EnvelopeCurve]:
    return {m: qc_envelope(TierSpec(dims, m)) for m in range(1, dims.n)}


@lru_cache(maxsize=64)
def _wall(dims: DimensionProfile) -> EnvelopeCurve:
    return feasibility_wall(dims)


def classical_boundary(dims: DimensionProfile | Iterable[int] | str, config: Optional[AppConfig] = None) -> EnvelopeCurve:
    """C envelope used by :func:`classify`; exact for two qubits, cached numeric otherwise."""

    config = config or load_config()
    settings = config.envelopes
    return _classical_boundary(DimensionProfile.of(dims), settings.classify_grid, settings.classify_starts, config.sampling.seed)


def _delta_y(curve: EnvelopeCurve, point: BudgetPoint) -> Optional[float]:
    boundary = curve.to_rationalised().evaluate(point.X)
    return None if boundary is None else point.Y - boundary


def _above(curve: EnvelopeCurve, point: BudgetPoint) -> Optional[bool]:
    value = curve.evaluate(point.B_L)
    return None if value is None else point.B_NL > value + REGION_TOLERANCE


def frustrated_margin(point: BudgetPoint) -> Optional[float]:
    """Local budget in excess of the qubit-qutrit frustrated boundary; ``None`` below ``B_NL = 2``.

    Past ``B_NL = 9/2`` the boundary is held at its end value, which no state reaches.
    """

    if point.B_NL < FRUSTRATED_START:
        return None
    return point.B_L - frustrated_curve_23(min(point.B_NL, FRUSTRATED_END))


def npt_flag(dims: DimensionProfile, m: int) -> str:
    return "guaranteed-npt" if dims.n == 2 else f"guaranteed-npt:{m}"


def classify(
    point: BudgetPoint,
    dims: DimensionProfile | Iterable[int] | str,
    config: Optional[AppConfig] = None,
) -> RegionReport:
    """Flags and margins of ``point`` on profile ``dims``.

    Guarantee flags are strict: a point counts as above a boundary only when
    it clears it by more than ``REGION_TOLERANCE`` in nonlocal budget. An
    unphysical point carries no other flag.
    """

    dims = DimensionProfile.of(dims)
    flags: List[str] = []
    margins: Dict[str, Optional[float]] = {}

    wall = _wall(dims)
    wall_value = wall.evaluate(point.B_L)
    if wall_value is not None:
        margins["wall"] = point.B_NL - wall_value
    max_local = float(sum(d - 1 for d in dims))
    frustrated = frustrated_margin(point) if dims == QUBIT_QUTRIT else None
    if frustrated is not None:
        margins["frustrated"] = frustrated
    if (
        point.R > 1.0 + REGION_TOLERANCE
        or point.B_L > max_local + REGION_TOLERANCE
        or (wall_value is not None and point.B_NL < wall_value - REGION_TOLERANCE)
        or (frustrated is not None and frustrated < -REGION_TOLERANCE)
    ):
        LOGGER.debug("Point (%.6g, %.6g) is outside the feasible region of %s", point.B_L, point.B_NL, dims)
        return RegionReport(dims=list(dims.dims), flags=["unphysical"], margins=margins)

    if dims.n == 2 and point.P <= 1.0 / (dims.D - 1) + REGION_TOLERANCE:
        flags.append("absolutely-separable")
    if dims.n == 2:
        margins["separability"] = _delta_y(separability_curve(dims), point)

    classical = classical_boundary(dims, config)
    above_classical = _above(classical, point)
    margins["C"] = _delta_y(classical, point)
    if above_classical is not None:
        flags.append("guaranteed-discord" if above_classical else "classically-feasible")

    tiers = _tier_boundaries(dims)
    for m, curve in tiers.items():
        margins[curve.label] = _delta_y(curve, point)
        if _above(curve, point):
            flags.append(npt_flag(dims, m))
    if dims.n > 2 and _above(tiers[dims.n - 1], point):
        flags.append("guaranteed-gme")

    if dims == TWO_QUBITS:
        guarantee = chsh_guarantee_curve()
        margins["chsh-guarantee"] = _delta_y(guarantee, point)
        if point.B_NL > 1.0 + REGION_TOLERANCE:
            flags.append("steerable-guaranteed")
            flags.append("chsh-guaranteed" if point.B_NL > CHSH_GUARANTEE + REGION_TOLERANCE else "chsh-possible")
    return RegionReport(dims=list(dims.dims), flags=flags, margins=margins)


__all__ = ["FLAGS", "REGION_TOLERANCE", "classical_boundary", "classify", "frustrated_margin", "npt_flag"]
