"""Random-state ensembles and the seeded random streams that drive them."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from typing import Callable, Dict, Iterable, Iterator, Optional, Sequence

import numpy as np
from tqdm import tqdm

from ..config import AppConfig, SamplingSettings, load_config
from ..errors import DimensionError, DomainError, FilterExhaustedError, UsageError
from ..linalg import DimensionProfile, dagger, kron
from .density import DensityMatrix, from_ket, purity, validate

LOGGER = logging.getLogger(__name__)

STREAM_IDS: Dict[str, int] = {
    "pure-product": 1,
    "classical": 2,
    "pure-entangled": 3,
    "werner": 4,
    "wishart-npt": 5,
    "wishart-ppt": 6,
    "wishart": 7,
    "profile": 20,
    "cn-envelope": 30,
    "anchor": 40,
    "verify": 50,
}

WISHART_FILTERS = ("any", "npt", "ppt-mixed")


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Counter-based generator keyed by ``(seed, stream...)``.

    Distinct stream keys give statistically independent sequences, so
    ensembles, grid points and angles can be drawn in any order.
    """

    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.Philox(sequence))


def stream_rng(seed: int, name: str, *index: int) -> np.random.Generator:
    try:
        key = STREAM_IDS[name]
    except KeyError as exc:
        raise UsageError(f"unknown random stream '{name}'") from exc
    return make_rng(seed, key, *index)


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def haar_ket(d: int, rng: np.random.Generator) -> np.ndarray:
    psi = _complex_gaussian(rng, d)
    return psi / np.linalg.norm(psi)


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary from the QR decomposition of a Ginibre matrix with phase fix."""

    q, r = np.linalg.qr(_complex_gaussian(rng, (d, d)))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_local_unitary(dims: DimensionProfile, rng: np.random.Generator) -> np.ndarray:
    return kron(*(haar_unitary(d, rng) for d in dims))


# ---- samplers


def sample_haar_pure(dims: DimensionProfile | Iterable[int] | str, rng: np.random.Generator) -> DensityMatrix:
    dims = DimensionProfile.of(dims)
    return from_ket(haar_ket(dims.D, rng), dims)


def sample_product_pure(dims: DimensionProfile | Iterable[int] | str, rng: np.random.Generator) -> DensityMatrix:
    dims = DimensionProfile.of(dims)
    psi = kron(*(haar_ket(d, rng).reshape(-1, 1) for d in dims)).reshape(-1)
    return from_ket(psi, dims)


def sample_classical(
    dims: DimensionProfile | Iterable[int] | str,
    rng: Optional[np.random.Generator] = None,
    probabilities: Optional[Sequence[float]] = None,
) -> DensityMatrix:
    """Diagonal state with flat-Dirichlet weights, or with the given ``probabilities``."""

    dims = DimensionProfile.of(dims)
    if probabilities is None:
        if rng is None:
            raise DomainError("sample_classical needs either an rng or explicit probabilities")
        weights = rng.standard_exponential(dims.D)
    else:
        weights = np.asarray(probabilities, dtype=float)
        if weights.shape != (dims.D,):
            raise DimensionError(f"expected {dims.D} probabilities, got {weights.shape}")
        if np.any(weights < 0):
            raise DomainError("probabilities must be non-negative")
    total = float(np.sum(weights))
    if total <= 0.0:
        raise DomainError("probabilities sum to zero")
    return validate(np.diag(weights / total).astype(complex), dims)


def maximally_entangled_ket(d: int) -> np.ndarray:
    psi = np.zeros(d * d, dtype=complex)
    psi[[i * d + i for i in range(d)]] = 1.0
    return psi / np.sqrt(d)


def sample_werner(
    p: Optional[float] = None,
    rng: Optional[np.random.Generator] = None,
    dims: DimensionProfile | Iterable[int] | str = (2, 2),
) -> DensityMatrix:
    """``p |Phi+><Phi+| + (1 - p) I / D``; ``p`` is drawn uniformly when omitted."""

    dims = DimensionProfile.of(dims)
    if dims.n != 2 or not dims.is_symmetric:
        raise DimensionError(f"Werner states need a d x d profile, got {dims}")
    if p is None:
        if rng is None:
            raise DomainError("sample_werner needs either p or an rng")
        p = float(rng.uniform(0.0, 1.0))
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"Werner weight must lie in [0, 1], got {p}")
    phi = maximally_entangled_ket(dims[0])
    mat = p * np.outer(phi, np.conj(phi)) + (1.0 - p) * np.eye(dims.D) / dims.D
    return validate(mat, dims)


def _ginibre_state(dims: DimensionProfile, rng: np.random.Generator) -> np.ndarray:
    g = _complex_gaussian(rng, (dims.D, dims.D))
    w = g @ dagger(g)
    return w / np.trace(w).real


def sample_wishart(
    dims: DimensionProfile | Iterable[int] | str,
    rng: np.random.Generator,
    filter: str = "any",
    settings: Optional[SamplingSettings] = None,
) -> DensityMatrix:
    """Hilbert-Schmidt random state, optionally filtered on the first-subsystem cut.

    ``npt`` keeps draws with negativity above the threshold, ``ppt-mixed`` keeps
    draws below it whose purity is under the configured cap.
    """

    from ..resources.measures import negativity

    dims = DimensionProfile.of(dims)
    settings = settings or load_config().sampling
    if filter not in WISHART_FILTERS:
        raise UsageError(f"unknown Wishart filter '{filter}', choose from {', '.join(WISHART_FILTERS)}")
    for attempt in range(1, settings.wishart_retry_limit + 1):
        rho = validate(_ginibre_state(dims, rng), dims)
        if filter == "any":
            return rho
        if dims.n < 2:
            raise DimensionError("negativity filters need at least two subsystems")
        value = negativity(rho, 0)
        if filter == "npt" and value > settings.npt_threshold:
            return rho
        if filter == "ppt-mixed" and value < settings.npt_threshold and purity(rho) < settings.ppt_purity_max:
            return rho
        if attempt == settings.wishart_retry_limit // 2:
            LOGGER.warning("Wishart filter '%s' unsatisfied after %d draws", filter, attempt)
    raise FilterExhaustedError(filter, settings.wishart_retry_limit)


# ---- named ensembles


class StateEnsemble(ABC):
    """Strategy object drawing one state of a named family."""

    name: str = ""

    @abstractmethod
    def draw(self, dims: DimensionProfile, rng: np.random.Generator) -> DensityMatrix:
        raise NotImplementedError


class PureProductEnsemble(StateEnsemble):
    name = "pure-product"

    def draw(self, dims: DimensionProfile, rng: np.random.Generator) -> DensityMatrix:
        return sample_product_pure(dims, rng)


class ClassicalEnsemble(StateEnsemble):
    name = "classical"

    def draw(self, dims: DimensionProfile, rng: np.random.Generator) -> DensityMatrix:
        return sample_classical(dims, rng)


class PureEntangledEnsemble(StateEnsemble):
    name = "pure-entangled"

    def draw(self, dims: DimensionProfile, rng: np.random.Generator) -> DensityMatrix:
        return sample_haar_pure(dims, rng)


class WernerEnsemble(StateEnsemble):
    name = "werner"

    def draw(self, dims: DimensionProfile, rng: np.random.Generator) -> DensityMatrix:
        return sample_werner(rng=rng, dims=dims)


class WishartEnsemble(StateEnsemble):
    def __init__(self, filter: str, settings: Optional[SamplingSettings] = None) -> None:
        self.filter = filter
        self.settings = settings
        self.name = {"any": "wishart", "npt": "wishart-npt", "ppt-mixed": "wishart-ppt"}[filter]

    def draw(self, dims: DimensionProfile, rng: np.random.Generator) -> DensityMatrix:
        return sample_wishart(dims, rng, self.filter, self.settings)


def _registry(settings: Optional[SamplingSettings]) -> Dict[str, Callable[[], StateEnsemble]]:
    return {
        "pure-product": PureProductEnsemble,
        "classical": ClassicalEnsemble,
        "pure-entangled": PureEntangledEnsemble,
        "werner": WernerEnsemble,
        "wishart": lambda: WishartEnsemble("any", settings),
        "wishart-npt": lambda: WishartEnsemble("npt", settings),
        "wishart-ppt": lambda: WishartEnsemble("ppt-mixed", settings),
    }


FAMILIES = tuple(_registry(None))
METHOD_FAMILIES = ("pure-product", "classical", "pure-entangled", "werner", "wishart-npt", "wishart-ppt")


def get_ensemble(name: str, settings: Optional[SamplingSettings] = None) -> StateEnsemble:
    registry = _registry(settings)
    if name not in registry:
        raise UsageError(f"unknown family '{name}', choose from {', '.join(FAMILIES)}")
    return registry[name]()


def sample_family(
    name: str,
    dims: DimensionProfile | Iterable[int] | str,
    count: int,
    config: Optional[AppConfig] = None,
    seed: Optional[int] = None,
) -> Iterator[DensityMatrix]:
    """Yield ``count`` states of the named family from its dedicated stream."""

    config = config or load_config()
    dims = DimensionProfile.of(dims)
    ensemble = get_ensemble(name, config.sampling)
    rng = stream_rng(config.sampling.seed if seed is None else seed, name)
    LOGGER.info("Sampling %d states from family '%s' on %s", count, name, dims)
    for _ in tqdm(range(count), desc=name, disable=not config.sampling.progress):
        yield ensemble.draw(dims, rng)


__all__ = [
    "ClassicalEnsemble",
    "FAMILIES",
    "METHOD_FAMILIES",
    "PureEntangledEnsemble",
    "PureProductEnsemble",
    "STREAM_IDS",
    "StateEnsemble",
    "WISHART_FILTERS",
    "WernerEnsemble",
    "WishartEnsemble",
    "get_ensemble",
    "haar_ket",
    "haar_unitary",
    "make_rng",
    "maximally_entangled_ket",
    "random_local_unitary",
    "sample_classical",
    "sample_family",
    "sample_haar_pure",
    "sample_product_pure",
    "sample_werner",
    "sample_wishart",
    "stream_rng",
]
