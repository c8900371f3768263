"""Boundaries of the budget geometry and point classification."""

from .analytic import (
    chsh_guarantee_2q,
    chsh_guarantee_curve,
    classical_envelope_2q,
    classical_envelope_curve_2q,
    check_frustrated_ansatz,
    frustrated_curve,
    frustrated_curve_23,
    pure_line,
    q_wall_2q,
    separability_curve,
    separability_radius,
)
from .classical import cn_envelope, oracle_max_nonlocal
from .curves import EnvelopeCurve, LineSegment, QuadraticArc
from .hierarchy import TierSpec, qc_envelope, top_tier
from .regions import classify
from .walls import feasibility_wall, find_anchor, trace_wall

__all__ = [
    "EnvelopeCurve",
    "LineSegment",
    "QuadraticArc",
    "TierSpec",
    "check_frustrated_ansatz",
    "chsh_guarantee_2q",
    "chsh_guarantee_curve",
    "classical_envelope_2q",
    "classical_envelope_curve_2q",
    "classify",
    "cn_envelope",
    "feasibility_wall",
    "find_anchor",
    "frustrated_curve",
    "frustrated_curve_23",
    "oracle_max_nonlocal",
    "pure_line",
    "q_wall_2q",
    "qc_envelope",
    "separability_curve",
    "separability_radius",
    "top_tier",
    "trace_wall",
]
