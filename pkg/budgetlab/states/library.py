"""Named states used by the command line, the demo script and the test-suite."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Callable, Dict, Optional

import numpy as np

from ..errors import DimensionError, DomainError, UsageError
from ..linalg import DimensionProfile, kron
from .density import DensityMatrix, from_ket, maximally_mixed, validate
from .ensembles import maximally_entangled_ket, sample_werner

KET_0 = np.array([1.0, 0.0], dtype=complex)
KET_1 = np.array([0.0, 1.0], dtype=complex)
KET_PLUS = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)


def _uniform_ket(d: int) -> np.ndarray:
    return np.ones(d, dtype=complex) / math.sqrt(d)


def _basis_ket(d: int, index: int = 0) -> np.ndarray:
    psi = np.zeros(d, dtype=complex)
    psi[index] = 1.0
    return psi


def _projector(psi: np.ndarray) -> np.ndarray:
    return np.outer(psi, np.conj(psi))


def _require(dims: DimensionProfile, expected, name: str) -> None:
    if dims.dims != tuple(expected):
        raise DimensionError(f"state '{name}' is defined on {tuple(expected)}, got {dims.dims}")


def bell(dims: DimensionProfile) -> DensityMatrix:
    if dims.n != 2 or not dims.is_symmetric:
        raise DimensionError(f"state 'bell' needs a d x d profile, got {dims}")
    return from_ket(maximally_entangled_ket(dims[0]), dims)


def ghz(dims: DimensionProfile) -> DensityMatrix:
    if not dims.is_symmetric:
        raise DimensionError(f"state 'ghz' needs equal local dimensions, got {dims}")
    d = dims[0]
    psi = sum(kron(*(_basis_ket(d, level).reshape(-1, 1) for _ in dims)) for level in range(d))
    return from_ket(np.asarray(psi).reshape(-1), dims)


def w_state(dims: DimensionProfile) -> DensityMatrix:
    if not dims.is_qubits or dims.n < 2:
        raise DimensionError(f"state 'w' needs at least two qubits, got {dims}")
    psi = np.zeros(dims.D, dtype=complex)
    for k in range(dims.n):
        psi[1 << (dims.n - 1 - k)] = 1.0
    return from_ket(psi, dims)


def product(dims: DimensionProfile) -> DensityMatrix:
    """``|0> x |+> x |0> x ...`` with ``|+>`` the uniform superposition."""

    kets = [_basis_ket(d) if k % 2 == 0 else _uniform_ket(d) for k, d in enumerate(dims)]
    return from_ket(kron(*(k.reshape(-1, 1) for k in kets)).reshape(-1), dims)


def chsh_state(dims: DimensionProfile) -> DensityMatrix:
    """``cos(pi/8)|00> + sin(pi/8)|11>``, violating CHSH with 2 sqrt(3/2)."""

    _require(dims, (2, 2), "chsh")
    angle = math.pi / 8.0
    return from_ket(np.array([math.cos(angle), 0.0, 0.0, math.sin(angle)]), dims)


def mixed_entangled(dims: DimensionProfile) -> DensityMatrix:
    _require(dims, (2, 2), "mixed-entangled")
    phi = maximally_entangled_ket(2)
    return validate(0.6 * _projector(phi) + 0.4 * _projector(kron(KET_0, KET_1)), dims)


def mixed_separable(dims: DimensionProfile) -> DensityMatrix:
    _require(dims, (2, 2), "mixed-separable")
    mat = 0.5 * _projector(kron(KET_0, KET_0)) + 0.5 * _projector(kron(KET_PLUS, KET_PLUS))
    return validate(mat, dims)


def classical(dims: DimensionProfile) -> DensityMatrix:
    weights = np.arange(dims.D, 0, -1, dtype=float)
    if dims.D == 4:
        weights = np.array([0.4, 0.1, 0.2, 0.3])
    return validate(np.diag(weights / weights.sum()).astype(complex), dims)


def biseparable(dims: DimensionProfile) -> DensityMatrix:
    """``|0> x Phi+`` on three qubits."""

    _require(dims, (2, 2, 2), "biseparable")
    return from_ket(kron(KET_0, maximally_entangled_ket(2)), dims)


def frustrated_ansatz(weight: float = 2.0 / 3.0) -> DensityMatrix:
    """2x3 mixture ``w |Phi+><Phi+| + (1 - w) I/2 x |2><2|``.

    ``Phi+`` lives in the qutrit's ``{|0>, |1>}`` subspace. At ``w = 2/3`` both
    marginals are maximally mixed and the state sits at ``(B_L, B_NL) = (0, 2)``.
    """

    if not 0.0 <= weight <= 1.0:
        raise DomainError(f"mixture weight must lie in [0, 1], got {weight}")
    dims = DimensionProfile((2, 3))
    phi = (kron(KET_0, _basis_ket(3, 0)) + kron(KET_1, _basis_ket(3, 1))) / math.sqrt(2.0)
    sigma = 0.5 * (_projector(kron(KET_0, _basis_ket(3, 2))) + _projector(kron(KET_1, _basis_ket(3, 2))))
    return validate(weight * _projector(phi) + (1.0 - weight) * sigma, dims)


BUILTINS: Dict[str, Callable[[DimensionProfile], DensityMatrix]] = {
    "bell": bell,
    "ghz": ghz,
    "w": w_state,
    "product": product,
    "chsh": chsh_state,
    "mixed-entangled": mixed_entangled,
    "mixed-separable": mixed_separable,
    "classical": classical,
    "biseparable": biseparable,
    "mixed": maximally_mixed,
}

PARAMETRISED = ("werner:<p>", "frustrated:<w>")

DEFAULT_DIMS = {
    "ghz": (2, 2, 2),
    "w": (2, 2, 2),
    "chsh": (2, 2),
    "mixed-entangled": (2, 2),
    "mixed-separable": (2, 2),
    "biseparable": (2, 2, 2),
    "frustrated": (2, 3),
}


def builtin_names() -> list[str]:
    return sorted(BUILTINS) + list(PARAMETRISED)


def load_state_file(path: str | Path) -> DensityMatrix:
    """Read the ``{"dims": [...], "re": [[...]], "im": [[...]]}`` state format."""

    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        dims = DimensionProfile.of(payload["dims"])
        mat = np.asarray(payload["re"], dtype=float) + 1j * np.asarray(payload.get("im", 0.0), dtype=float)
    except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read state file '{path}': {exc}") from exc
    return validate(mat, dims)


def parse_state_spec(spec: str, dims: Optional[DimensionProfile | str] = None) -> DensityMatrix:
    """Resolve ``name``, ``name:param`` or a path to a state JSON file."""

    text = spec.strip()
    name, _, param = text.partition(":")
    name = name.lower()
    if name not in BUILTINS and name not in ("werner", "frustrated"):
        if Path(text).suffix == ".json" or Path(text).exists():
            return load_state_file(text)
        raise UsageError(f"unknown state '{spec}', choose from {', '.join(builtin_names())} or a JSON file")
    profile = DimensionProfile.of(dims if dims is not None else DEFAULT_DIMS.get(name, (2, 2)))
    if name in ("werner", "frustrated"):
        try:
            value = float(param) if param else (2.0 / 3.0 if name == "frustrated" else 1.0)
        except ValueError as exc:
            raise UsageError(f"cannot parse parameter of '{spec}'") from exc
        if name == "werner":
            return sample_werner(value, dims=profile)
        _require(profile, (2, 3), "frustrated")
        return frustrated_ansatz(value)
    if param:
        raise UsageError(f"state '{name}' takes no parameter")
    return BUILTINS[name](profile)


__all__ = [
    "BUILTINS",
    "biseparable",
    "builtin_names",
    "bell",
    "chsh_state",
    "classical",
    "frustrated_ansatz",
    "ghz",
    "load_state_file",
    "mixed_entangled",
    "mixed_separable",
    "parse_state_spec",
    "product",
    "w_state",
]
