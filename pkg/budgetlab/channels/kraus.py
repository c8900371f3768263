"""Kraus channels acting on chosen subsystems of a multipartite register."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ChannelError, DimensionError, DomainError, StateValidationError, UsageError
from ..linalg import DimensionProfile, dagger, embed_operator
from ..states.density import DensityMatrix, validate

LOGGER = logging.getLogger(__name__)

LOCAL_KINDS = ("identity", "dephasing", "depolarizing", "amplitude-damping")
CORRELATED_KINDS = ("correlated-phase-flip", "correlated-amplitude-damping")
# act on the whole register at once
GLOBAL_KINDS = ("synchronization",)
CHANNEL_KINDS = LOCAL_KINDS + CORRELATED_KINDS + GLOBAL_KINDS
# the five noise models of the decoherence survey
SURVEY_KINDS = ("dephasing", "depolarizing", "amplitude-damping", "correlated-phase-flip", "correlated-amplitude-damping")

COMPLETENESS_TOLERANCE = 1e-10


def weyl_shift(d: int) -> np.ndarray:
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def weyl_clock(d: int) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * np.arange(d) / d))


def _dephasing(p: float, d: int) -> List[np.ndarray]:
    ops = [np.sqrt(1.0 - p) * np.eye(d, dtype=complex)]
    for level in range(d):
        projector = np.zeros((d, d), dtype=complex)
        projector[level, level] = 1.0
        ops.append(np.sqrt(p) * projector)
    return ops


def _depolarizing(p: float, d: int) -> List[np.ndarray]:
    shift, clock = weyl_shift(d), weyl_clock(d)
    ops = [np.sqrt(1.0 - p + p / d**2) * np.eye(d, dtype=complex)]
    for a, b in product(range(d), repeat=2):
        if a == 0 and b == 0:
            continue
        weyl = np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
        ops.append(np.sqrt(p) / d * weyl)
    return ops


def _amplitude_damping(p: float, d: int) -> List[np.ndarray]:
    k0 = np.eye(d, dtype=complex) * np.sqrt(1.0 - p)
    k0[0, 0] = 1.0
    ops = [k0]
    for level in range(1, d):
        decay = np.zeros((d, d), dtype=complex)
        decay[0, level] = np.sqrt(p)
        ops.append(decay)
    return ops


def _correlated_phase_flip(p: float, d0: int, d1: int) -> List[np.ndarray]:
    return [
        np.sqrt(1.0 - p) * np.eye(d0 * d1, dtype=complex),
        np.sqrt(p) * np.kron(weyl_clock(d0), weyl_clock(d1)),
    ]


def _correlated_amplitude_damping(p: float, d0: int, d1: int) -> List[np.ndarray]:
    if (d0, d1) != (2, 2):
        raise DimensionError("correlated amplitude damping acts on a pair of qubits")
    k0 = np.eye(4, dtype=complex)
    k0[3, 3] = np.sqrt(1.0 - p)
    k1 = np.zeros((4, 4), dtype=complex)
    k1[0, 3] = np.sqrt(p)
    return [k0, k1]


def sync_state_matrix(dims: DimensionProfile) -> np.ndarray:
    """``(1/m) sum_k |k...k><k...k|`` with ``m`` the smallest local dimension."""

    levels = min(dims)
    sigma = np.zeros((dims.D, dims.D), dtype=complex)
    for k in range(levels):
        index = int(np.ravel_multi_index((k,) * dims.n, dims.dims))
        sigma[index, index] = 1.0 / levels
    return sigma


def _synchronization(p: float, dims: DimensionProfile) -> List[np.ndarray]:
    """Replacement channel ``rho -> (1 - p) rho + p tr(rho) sigma_sync``."""

    ops = [np.sqrt(1.0 - p) * np.eye(dims.D, dtype=complex)]
    sigma = np.diag(sync_state_matrix(dims)).real
    for index in np.flatnonzero(sigma):
        for column in range(dims.D):
            op = np.zeros((dims.D, dims.D), dtype=complex)
            op[index, column] = np.sqrt(p * sigma[index])
            ops.append(op)
    return ops


@dataclass(frozen=True)
class KrausChannel:
    """Channel stored as consecutive stages of embedded Kraus sets.

    ``stages`` are applied in order; ``kraus`` expands them into one set.
    """

    dims: DimensionProfile
    stages: Tuple[Tuple[np.ndarray, ...], ...]
    label: str

    @property
    def kraus(self) -> List[np.ndarray]:
        if not self.stages:
            return [np.eye(self.dims.D, dtype=complex)]
        return [reduce(lambda acc, k: k @ acc, ops) for ops in product(*self.stages)]

    def completeness_error(self) -> float:
        total = sum(dagger(k) @ k for k in self.kraus)
        return float(np.max(np.abs(total - np.eye(self.dims.D))))

    def apply_matrix(self, mat: np.ndarray) -> np.ndarray:
        for ops in self.stages:
            mat = sum(k @ mat @ dagger(k) for k in ops)
        return mat


def resolve_targets(kind: str, dims: DimensionProfile, target: Optional[Sequence[int] | str]) -> Tuple[int, ...]:
    if target is None or (isinstance(target, str) and target.strip().lower() == "all"):
        if kind in CORRELATED_KINDS:
            return (0, 1)
        return tuple(range(dims.n))
    if isinstance(target, str):
        try:
            target = [int(part) for part in target.split(",") if part.strip()]
        except ValueError as exc:
            raise UsageError(f"cannot parse channel target '{target}'") from exc
    targets = tuple(dims.check_index(t) for t in target)
    if len(set(targets)) != len(targets):
        raise DimensionError(f"repeated channel targets {targets}")
    if kind in CORRELATED_KINDS and len(targets) != 2:
        raise DimensionError(f"'{kind}' needs exactly two target subsystems, got {targets}")
    if kind in GLOBAL_KINDS and sorted(targets) != list(range(dims.n)):
        raise DimensionError(f"'{kind}' acts on every subsystem, got {targets}")
    return targets


def make_channel(
    kind: str,
    p: float,
    dims: DimensionProfile | Iterable[int] | str,
    target: Optional[Sequence[int] | str] = None,
) -> KrausChannel:
    """Channel of the given kind and strength on ``target`` (``None`` or ``"all"`` for every subsystem).

    Local kinds act independently on each target; correlated kinds act on one
    ordered pair. Global kinds act on the whole register.
    """

    dims = DimensionProfile.of(dims)
    if kind not in CHANNEL_KINDS:
        raise UsageError(f"unknown channel '{kind}', choose from {', '.join(CHANNEL_KINDS)}")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"noise strength must lie in [0, 1], got {p}")
    targets = resolve_targets(kind, dims, target)
    label = f"{kind}(p={p:.6g}; targets={','.join(map(str, targets))})"
    if kind == "identity":
        return KrausChannel(dims=dims, stages=(), label=label)
    stages = []
    if kind in GLOBAL_KINDS:
        stages.append(tuple(_synchronization(p, dims)))
    elif kind in LOCAL_KINDS:
        builder = {"dephasing": _dephasing, "depolarizing": _depolarizing, "amplitude-damping": _amplitude_damping}[kind]
        for t in targets:
            stages.append(tuple(embed_operator(k, [t], dims) for k in builder(p, dims[t])))
    else:
        builder = {"correlated-phase-flip": _correlated_phase_flip, "correlated-amplitude-damping": _correlated_amplitude_damping}[kind]
        local = builder(p, dims[targets[0]], dims[targets[1]])
        stages.append(tuple(embed_operator(k, list(targets), dims) for k in local))
    channel = KrausChannel(dims=dims, stages=tuple(stages), label=label)
    LOGGER.debug("Built channel %s", label)
    return channel


def apply(channel: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """``sum_k K_k rho K_k^dagger``; an invalid output raises :class:`ChannelError`."""

    if channel.dims != rho.dims:
        raise DimensionError(f"channel on {channel.dims} applied to a state on {rho.dims}")
    try:
        return validate(channel.apply_matrix(rho.mat), rho.dims)
    except StateValidationError as exc:
        raise ChannelError(f"channel {channel.label} produced an invalid state: {exc}") from exc


def parse_channel_spec(spec: str) -> Tuple[str, Optional[str]]:
    """Split ``kind[:target]`` as used on the command line."""

    kind, _, target = spec.strip().partition(":")
    kind = kind.lower().replace("_", "-")
    if kind == "depolarising":
        kind = "depolarizing"
    if kind == "synchronisation":
        kind = "synchronization"
    if kind not in CHANNEL_KINDS:
        raise UsageError(f"unknown channel '{kind}', choose from {', '.join(CHANNEL_KINDS)}")
    return kind, target or None


__all__ = [
    "CHANNEL_KINDS",
    "CORRELATED_KINDS",
    "GLOBAL_KINDS",
    "KrausChannel",
    "LOCAL_KINDS",
    "SURVEY_KINDS",
    "apply",
    "make_channel",
    "parse_channel_spec",
    "resolve_targets",
    "sync_state_matrix",
    "weyl_clock",
    "weyl_shift",
]
