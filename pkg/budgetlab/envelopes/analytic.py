"""Closed-form boundaries: two-qubit curves and the qubit-qutrit frustrated curve."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from ..budget import BudgetPoint, budget_decompose
from ..errors import DomainError
from ..linalg import DimensionProfile
from ..states.density import DensityMatrix
from ..states.library import frustrated_ansatz
from .curves import EnvelopeCurve, Plane, exact_polyline, polyline

TWO_QUBITS = DimensionProfile((2, 2))
QUBIT_QUTRIT = DimensionProfile((2, 3))
_EDGE = 1e-12


def _check_range(x: float, upper: float, name: str) -> float:
    if not -_EDGE <= x <= upper + _EDGE:
        raise DomainError(f"{name} = {x} outside [0, {upper:.12g}]")
    return min(max(x, 0.0), upper)


def classical_envelope_2q(x: float) -> float:
    """``Y_max(X) = sqrt(2/3 - X^2/2)``, the image of ``B_NL = 1``."""

    x = _check_range(x, math.sqrt(2.0 / 3.0), "X")
    return math.sqrt(2.0 / 3.0 - x * x / 2.0)


def chsh_guarantee_2q(x: float) -> float:
    """``Y = sqrt(4/5 - 3 X^2 / 5)``; every state above it violates CHSH."""

    x = _check_range(x, math.sqrt(0.5), "X")
    return math.sqrt(4.0 / 5.0 - 3.0 * x * x / 5.0)


def separability_radius(dims: DimensionProfile | Iterable[int] | str = TWO_QUBITS) -> float:
    """Squared radius below which every bipartite state is absolutely separable.

    Follows from ``P <= 1/(D - 1)``; equals 1/3 for two qubits.
    """

    return 1.0 / (DimensionProfile.of(dims).D - 1)


def frustrated_curve_23(nonlocal_budget: float) -> float:
    """``B_L = B_NL + 2 - sqrt(8 B_NL)`` on ``B_NL in [2, 9/2]``."""

    if not 2.0 - _EDGE <= nonlocal_budget <= 4.5 + _EDGE:
        raise DomainError(f"B_NL = {nonlocal_budget} outside [2, 9/2]")
    bnl = min(max(nonlocal_budget, 2.0), 4.5)
    return bnl + 2.0 - math.sqrt(8.0 * bnl)


# ---- curves


def _in_plane(curve: EnvelopeCurve, plane: Plane) -> EnvelopeCurve:
    return curve.to_rationalised() if plane == "rationalised" else curve


def classical_envelope_curve_2q(plane: Plane = "budget") -> EnvelopeCurve:
    curve = exact_polyline("C", [(Fraction(0), Fraction(1)), (Fraction(2), Fraction(1))], dims=TWO_QUBITS)
    return _in_plane(curve, plane)


def chsh_guarantee_curve(plane: Plane = "budget") -> EnvelopeCurve:
    half = Fraction(3, 2)
    curve = exact_polyline("chsh-guarantee", [(Fraction(0), half), (half, half)], dims=TWO_QUBITS)
    return _in_plane(curve, plane)


def separability_curve(dims: DimensionProfile | Iterable[int] | str = TWO_QUBITS, plane: Plane = "budget") -> EnvelopeCurve:
    """Budget line ``B = 1/(D - 1)``, the circle ``R = 1/(D - 1)`` in rationalised form."""

    dims = DimensionProfile.of(dims)
    b = Fraction(1, dims.D - 1)
    curve = exact_polyline("separability", [(Fraction(0), b), (b, Fraction(0))], dims=dims)
    return _in_plane(curve, plane)


def pure_line(dims: DimensionProfile | Iterable[int] | str, plane: Plane = "budget") -> EnvelopeCurve:
    """Pure states from the axis to the pure product point; the unit circle when rationalised."""

    dims = DimensionProfile.of(dims)
    local = Fraction(sum(d - 1 for d in dims))
    total = Fraction(dims.D - 1)
    curve = exact_polyline("pure-line", [(Fraction(0), total), (local, total - local)], dims=dims)
    return _in_plane(curve, plane)


def q_wall_2q(plane: Plane = "rationalised") -> EnvelopeCurve:
    """``Q = 0`` wall: ``B_NL = B_L - 1``, the vertical line ``X^2 = 2/3`` when rationalised."""

    curve = exact_polyline("wall", [(Fraction(2), Fraction(1)), (Fraction(1), Fraction(0))], dims=TWO_QUBITS)
    return _in_plane(curve, plane)


def frustrated_curve(resolution: int = 101) -> EnvelopeCurve:
    """Sampled frustrated boundary of the qubit-qutrit budget plane."""

    nonlocal_values = np.linspace(2.0, 4.5, max(int(resolution), 2))
    points = [(frustrated_curve_23(float(b)), float(b)) for b in nonlocal_values]
    return polyline("frustrated", "budget", points, dims=QUBIT_QUTRIT)


@dataclass(frozen=True)
class FrustratedAnsatzCheck:
    state: DensityMatrix
    point: BudgetPoint
    curve_local_budget: float

    @property
    def deviation(self) -> float:
        return abs(self.point.B_L - self.curve_local_budget)


def check_frustrated_ansatz(weight: float = 2.0 / 3.0) -> FrustratedAnsatzCheck:
    """Build the mixture at ``weight`` and compare its point with the frustrated curve."""

    state = frustrated_ansatz(weight)
    point = budget_decompose(state)
    return FrustratedAnsatzCheck(state=state, point=point, curve_local_budget=frustrated_curve_23(point.B_NL))


__all__ = [
    "FrustratedAnsatzCheck",
    "check_frustrated_ansatz",
    "chsh_guarantee_2q",
    "chsh_guarantee_curve",
    "classical_envelope_2q",
    "classical_envelope_curve_2q",
    "frustrated_curve",
    "frustrated_curve_23",
    "pure_line",
    "q_wall_2q",
    "separability_curve",
    "separability_radius",
]
