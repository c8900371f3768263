"""Exact quantum-classical envelopes ``Q^m C^(n-m)`` in the budget plane."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Set, Tuple

from ..errors import DomainError
from ..linalg import DimensionProfile
from .curves import EnvelopeCurve, ExactVertex, exact_polyline

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class TierSpec:
    """``m`` quantum subsystems out of ``n``; ``m = 0`` denotes the all-classical tier."""

    dims: DimensionProfile
    m: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", DimensionProfile.of(self.dims))
        if self.dims.n < 2:
            raise DomainError("envelope tiers need at least two subsystems")
        if not 0 <= self.m <= self.dims.n - 1:
            raise DomainError(f"tier m = {self.m} outside [0, {self.dims.n - 1}] for {self.dims}")

    @classmethod
    def parse(cls, text: str, dims: DimensionProfile | Iterable[int] | str) -> "TierSpec":
        """``c`` for the all-classical tier or ``qc:<m>``."""

        label = text.strip().lower()
        if label == "c":
            return cls(DimensionProfile.of(dims), 0)
        kind, _, m = label.partition(":")
        if kind != "qc" or not m.isdigit():
            raise DomainError(f"cannot parse tier '{text}'")
        return cls(DimensionProfile.of(dims), int(m))

    @property
    def is_classical(self) -> bool:
        return self.m == 0

    @property
    def label(self) -> str:
        return "C" if self.is_classical else f"QC:{self.m}"


def pure_vertex(tier: TierSpec) -> ExactVertex:
    dims = tier.dims
    if tier.m == 1:
        local = sum(d - 1 for d in dims)
    else:
        local = sum(d - 1 for d in dims.dims[: dims.n - tier.m])
    return Fraction(local), Fraction(dims.D - 1 - local)


def correlation_vertex(tier: TierSpec) -> ExactVertex:
    bottleneck = tier.dims[tier.m]
    return Fraction(0), Fraction(tier.dims.D, bottleneck) - 1


def hinge_vertices(tier: TierSpec) -> List[ExactVertex]:
    """Bottleneck points of every distinct quantum/classical assignment.

    Assignments are distinct up to permutations of equal dimensions; the one
    whose quantum part is the ``m`` smallest subsystems gives the correlation
    vertex and is skipped. Hinges with ``B_L <= 0`` or ``B_L >= B_L^pure`` are dropped.
    """

    dims = tier.dims
    reference = tuple(sorted(dims.dims[: tier.m]))
    local_pure = pure_vertex(tier)[0]
    seen: Set[Tuple[int, ...]] = set()
    hinges: List[ExactVertex] = []
    for quantum in combinations(range(dims.n), tier.m):
        key = tuple(sorted(dims[k] for k in quantum))
        if key in seen or key == reference:
            continue
        seen.add(key)
        classical_min = min(dims[k] for k in range(dims.n) if k not in quantum)
        local = sum(Fraction(d, classical_min) - 1 for d in dims)
        if local <= 0 or local >= local_pure:
            continue
        hinges.append((local, Fraction(dims.D, classical_min) - 1 - local))
    return sorted(set(hinges), key=lambda v: -math.atan2(v[1], v[0]))


def _cross(o: ExactVertex, a: ExactVertex, b: ExactVertex) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def upper_hull(points: List[ExactVertex]) -> List[ExactVertex]:
    """Keep the points whose joining slopes are strictly decreasing."""

    hull: List[ExactVertex] = []
    for point in points:
        while len(hull) > 1 and _cross(hull[-2], hull[-1], point) >= 0:
            hull.pop()
        hull.append(point)
    return hull


def qc_envelope(tier: TierSpec) -> EnvelopeCurve:
    """Piecewise-linear ``Q^m C^(n-m)`` boundary with exact rational vertices."""

    if tier.is_classical:
        raise DomainError("the all-classical tier is numeric; use cn_envelope")
    ordered = [correlation_vertex(tier)] + hinge_vertices(tier) + [pure_vertex(tier)]
    vertices = upper_hull(ordered)
    LOGGER.debug("Tier %s on %s: candidates %s, hull %s", tier.label, tier.dims, ordered, vertices)
    return exact_polyline(tier.label, vertices, dims=tier.dims)


def top_tier(dims: DimensionProfile | Iterable[int] | str) -> Optional[TierSpec]:
    """``Q^(n-1) C`` tier, the last one below genuine multipartite correlations."""

    dims = DimensionProfile.of(dims)
    if dims.n < 2:
        return None
    return TierSpec(dims, dims.n - 1)


__all__ = [
    "TierSpec",
    "correlation_vertex",
    "hinge_vertices",
    "pure_vertex",
    "qc_envelope",
    "top_tier",
    "upper_hull",
]
