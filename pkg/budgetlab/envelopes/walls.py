"""Feasibility walls: the outer boundary of the budget plane.

The wall is the image of an anchored product state whose subsystems are
fully depolarised one after another, smallest dimension first. Every anchor
is a pure local state with vanishing local time-reversal overlap, so the
overlap ``Q`` stays zero along the path. Within a stage only one factor's
purity moves, which makes each stage a straight budget-plane segment between
junctions where the depolarised factors are maximally mixed and the rest are
pure. Stages lying on the floor ``B_NL = 0`` are not part of the wall.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from operator import mul
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from ..channels.flows import Trajectory, sequential_depolarization
from ..config import AppConfig, load_config
from ..errors import AnchorSearchError, DomainError
from ..linalg import DimensionProfile
from ..states.density import DensityMatrix, from_ket, product_state, time_reversal_unitary
from ..states.ensembles import haar_ket, stream_rng
from .curves import EnvelopeCurve, ExactVertex, LineSegment, Plane, exact_polyline

LOGGER = logging.getLogger(__name__)

FLOOR_TOLERANCE = 1e-12


def depolarization_order(dims: DimensionProfile) -> List[int]:
    return sorted(range(dims.n), key=lambda k: (dims[k], k))


def junction_vertices(dims: DimensionProfile | Iterable[int] | str) -> List[ExactVertex]:
    """Exact budget points between depolarisation stages, starting at the pure product point."""

    dims = DimensionProfile.of(dims)
    remaining = list(depolarization_order(dims))
    vertices: List[ExactVertex] = []
    while True:
        pure_dims = [dims[k] for k in remaining]
        local = Fraction(sum(d - 1 for d in pure_dims))
        total = Fraction(reduce(mul, pure_dims, 1) - 1)
        vertices.append((local, total - local))
        if not remaining:
            return vertices
        remaining.pop(0)


def feasibility_wall(dims: DimensionProfile | Iterable[int] | str, plane: Plane = "budget") -> EnvelopeCurve:
    """Exact wall of ``dims``: the junction polyline without its floor stages.

    Two qubits give the segment ``(2, 1) -> (1, 0)``, the vertical line
    ``X^2 = 2/3`` when rationalised. A symmetric qutrit pair gives
    ``(4, 4) -> (2, 0)`` and three qubits give the roof ``(3, 4) -> (2, 1)``
    followed by the cliff ``(2, 1) -> (1, 0)``.
    """

    dims = DimensionProfile.of(dims)
    vertices = junction_vertices(dims)
    kept = [vertices[0]]
    for vertex in vertices[1:]:
        if kept[-1][1] <= 0:
            break
        kept.append(vertex)
    if len(kept) < 2:
        raise DomainError(f"profile {dims} has no wall above the floor")
    curve = exact_polyline("wall", kept, dims=dims)
    return curve.to_rationalised() if plane == "rationalised" else curve


def local_overlap(psi: np.ndarray) -> float:
    """Local time-reversal overlap ``|<psi| U psi*>|^2`` of a pure state."""

    u = time_reversal_unitary(len(psi))
    return float(abs(np.vdot(psi, u @ np.conj(psi))) ** 2)


def _ket_from_params(params: np.ndarray, d: int) -> np.ndarray:
    psi = params[:d] + 1j * params[d:]
    return psi / np.linalg.norm(psi)


def find_anchor(
    d: int,
    rng: Optional[np.random.Generator] = None,
    restarts: int = 100,
    tolerance: float = 1e-8,
) -> np.ndarray:
    """Pure state of dimension ``d`` whose local overlap is below ``tolerance``.

    Every qubit state qualifies; other dimensions are searched by BFGS from
    Haar-random restarts. Raises :class:`AnchorSearchError` when no restart
    reaches the tolerance.
    """

    rng = rng or stream_rng(load_config().sampling.seed, "anchor", d)
    best_value, best_psi = np.inf, None
    for attempt in range(max(int(restarts), 1)):
        start = haar_ket(d, rng)
        if local_overlap(start) <= tolerance:
            return start
        result = minimize(
            lambda x: local_overlap(_ket_from_params(x, d)),
            np.concatenate([start.real, start.imag]),
            method="BFGS",
            options={"gtol": 1e-12, "maxiter": 500},
        )
        psi = _ket_from_params(result.x, d)
        value = local_overlap(psi)
        if value < best_value:
            best_value, best_psi = value, psi
        if value <= tolerance:
            LOGGER.debug("Anchor for d=%d found after %d restarts (Q=%.2e)", d, attempt + 1, value)
            return psi
    raise AnchorSearchError(d, None if best_psi is None else float(best_value))


def anchored_product(dims: DimensionProfile, config: Optional[AppConfig] = None) -> DensityMatrix:
    config = config or load_config()
    anchors: Dict[int, np.ndarray] = {}
    for d in sorted(set(dims)):
        anchors[d] = find_anchor(
            d,
            stream_rng(config.sampling.seed, "anchor", d),
            config.envelopes.anchor_restarts,
            config.envelopes.anchor_tolerance,
        )
    return product_state(*(from_ket(anchors[d], (d,)) for d in dims))


@dataclass(frozen=True)
class TracedWall:
    """Numerically traced wall with the stage samples that produced it."""

    curve: EnvelopeCurve
    trajectory: Trajectory
    stage_points: Sequence[Sequence[tuple]]
    max_overlap: float
    max_deviation: float


def trace_wall(dims: DimensionProfile | Iterable[int] | str, config: Optional[AppConfig] = None) -> TracedWall:
    """Wall traced by sequential depolarisation of an anchored product state.

    ``max_deviation`` is the largest distance of a stage sample from the chord
    joining that stage's end points; ``max_overlap`` the largest ``|Q|`` seen.
    """

    config = config or load_config()
    dims = DimensionProfile.of(dims)
    anchor = anchored_product(dims, config)
    trajectory = sequential_depolarization(
        anchor,
        order=depolarization_order(dims),
        steps=config.envelopes.wall_steps,
        state_label="anchor",
        config=config,
    )
    stages: List[List[tuple]] = [[] for _ in range(dims.n)]
    for sample in trajectory.samples:
        stages[sample.stage].append((sample.point.B_L, sample.point.B_NL))
    for stage in range(1, dims.n):
        stages[stage].insert(0, stages[stage - 1][-1])

    pieces: List[LineSegment] = []
    deviation = 0.0
    for points in stages:
        start, end = points[0], points[-1]
        if start[1] <= FLOOR_TOLERANCE:
            break
        dx, dy = end[0] - start[0], end[1] - start[1]
        length = float(np.hypot(dx, dy))
        for x, y in points:
            deviation = max(deviation, abs(dx * (y - start[1]) - dy * (x - start[0])) / length)
        pieces.append(LineSegment(v0=(float(start[0]), float(start[1])), v1=(float(end[0]), float(end[1]))))
    wall_samples = [s for s in trajectory.samples if s.stage < len(pieces)]
    overlap = max((abs(s.point.Q or 0.0) for s in wall_samples), default=0.0)
    if overlap > 1e-8:
        LOGGER.warning("Traced wall on %s left the Q = 0 surface (|Q| up to %.3e)", dims, overlap)
    curve = EnvelopeCurve(label="wall", plane="budget", pieces=tuple(pieces), dims=dims)
    curve.notes.update(traced=True, max_deviation=deviation, max_overlap=overlap)
    LOGGER.info("Traced %d wall stage(s) on %s, chord deviation %.2e", len(pieces), dims, deviation)
    return TracedWall(curve=curve, trajectory=trajectory, stage_points=stages, max_overlap=overlap, max_deviation=deviation)


__all__ = [
    "TracedWall",
    "anchored_product",
    "depolarization_order",
    "feasibility_wall",
    "find_anchor",
    "junction_vertices",
    "local_overlap",
    "trace_wall",
]
