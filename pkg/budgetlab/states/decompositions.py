"""Fano (two-qubit) and Pauli-string (n-qubit) expansions of density matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Tuple

import numpy as np

from ..errors import DimensionError
from ..linalg import DimensionProfile, kron, singular_values
from .density import DensityMatrix, validate

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
PAULI_BASIS = np.stack([IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z])
PAULI_LABELS = "IXYZ"

TWO_QUBITS = DimensionProfile((2, 2))


@dataclass(frozen=True)
class FanoComponents:
    """Bloch vectors ``r``, ``s`` and correlation matrix ``t`` of a two-qubit state."""

    r: np.ndarray
    s: np.ndarray
    t: np.ndarray
    tsv: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", np.asarray(self.r, dtype=float).reshape(3))
        object.__setattr__(self, "s", np.asarray(self.s, dtype=float).reshape(3))
        object.__setattr__(self, "t", np.asarray(self.t, dtype=float).reshape(3, 3))
        object.__setattr__(self, "tsv", singular_values(self.t))

    @property
    def local_budget(self) -> float:
        return float(self.r @ self.r + self.s @ self.s)

    @property
    def nonlocal_budget(self) -> float:
        return float(np.sum(self.t**2))

    @property
    def t_max(self) -> float:
        return float(self.tsv[0])

    @property
    def r_norm(self) -> float:
        return float(np.linalg.norm(self.r))

    @property
    def s_norm(self) -> float:
        return float(np.linalg.norm(self.s))


def _require_two_qubits(rho: DensityMatrix) -> None:
    if rho.dims != TWO_QUBITS:
        raise DimensionError(f"two-qubit state required, got profile {rho.dims}")


def fano_decompose(rho: DensityMatrix) -> FanoComponents:
    """Read ``r_i = tr(rho s_i x I)``, ``s_i = tr(rho I x s_i)``, ``t_ij = tr(rho s_i x s_j)``."""

    _require_two_qubits(rho)
    r = [np.trace(rho.mat @ kron(p, IDENTITY)).real for p in PAULIS]
    s = [np.trace(rho.mat @ kron(IDENTITY, p)).real for p in PAULIS]
    t = [[np.trace(rho.mat @ kron(a, b)).real for b in PAULIS] for a in PAULIS]
    return FanoComponents(r=np.array(r), s=np.array(s), t=np.array(t))


def reconstruct_matrix(fano: FanoComponents) -> np.ndarray:
    mat = kron(IDENTITY, IDENTITY).astype(complex)
    for i, p in enumerate(PAULIS):
        mat = mat + fano.r[i] * kron(p, IDENTITY) + fano.s[i] * kron(IDENTITY, p)
        for j, q in enumerate(PAULIS):
            mat = mat + fano.t[i, j] * kron(p, q)
    return mat / 4.0


def reconstruct(fano: FanoComponents) -> DensityMatrix:
    """Inverse of :func:`fano_decompose`; raises when the components are not a state."""

    return validate(reconstruct_matrix(fano), TWO_QUBITS)


@dataclass(frozen=True)
class PauliSpectrum:
    """Coefficients ``x_k = tr(rho P_k)`` over every non-identity Pauli string."""

    n_qubits: int
    coeffs: np.ndarray

    @property
    def n_P(self) -> int:
        return 4**self.n_qubits - 1

    @property
    def budget(self) -> float:
        return float(np.sum(self.coeffs**2))

    @property
    def fourth_moment(self) -> float:
        return float(np.sum(self.coeffs**4))

    @property
    def x_max(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def labels(self) -> List[str]:
        return pauli_labels(self.n_qubits)

    def nonzero(self, tolerance: float = 1e-12) -> Dict[str, float]:
        return {
            label: float(value)
            for label, value in zip(self.labels(), self.coeffs)
            if abs(value) > tolerance
        }


def pauli_labels(n_qubits: int) -> List[str]:
    """Labels of the non-identity strings, first qubit most significant."""

    return ["".join(chars) for chars in product(PAULI_LABELS, repeat=n_qubits)][1:]


def _pauli_transfer() -> np.ndarray:
    # M[a, 2*i + j] = P_a[j, i], so that sum_ij rho_ij M[a, ij] = tr(rho P_a)
    return np.array([PAULI_BASIS[a].T.reshape(-1) for a in range(4)])


def pauli_spectrum(rho: DensityMatrix) -> PauliSpectrum:
    """Full Pauli expansion of an n-qubit state by successive single-qubit contractions."""

    if not rho.dims.is_qubits:
        raise DimensionError(f"Pauli spectrum requires qubits, got profile {rho.dims}")
    n = rho.dims.n
    tensor = rho.mat.reshape((2,) * (2 * n))
    interleave: Tuple[int, ...] = tuple(ax for k in range(n) for ax in (k, k + n))
    tensor = tensor.transpose(interleave).reshape((4,) * n)
    transfer = _pauli_transfer()
    for axis in range(n):
        tensor = np.moveaxis(np.tensordot(transfer, tensor, axes=([1], [axis])), 0, axis)
    coeffs = np.real(tensor.reshape(-1))[1:]
    return PauliSpectrum(n_qubits=n, coeffs=coeffs)


__all__ = [
    "FanoComponents",
    "PAULIS",
    "PauliSpectrum",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "TWO_QUBITS",
    "fano_decompose",
    "pauli_labels",
    "pauli_spectrum",
    "reconstruct",
    "reconstruct_matrix",
]
