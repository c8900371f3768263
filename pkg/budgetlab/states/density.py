"""Validated density matrices, purities and the time-reversal overlap."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np
from scipy.linalg import expm

from ..config import ToleranceSettings
from ..errors import DimensionError, NotPSDError, StateValidationError, TraceNotOneError
from ..linalg import (
    DimensionProfile,
    dagger,
    herm_eig,
    kron,
    partial_trace,
)

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix on a dimension profile."""

    dims: DimensionProfile
    mat: np.ndarray

    @property
    def D(self) -> int:
        return self.dims.D

    def marginal(self, keep: Iterable[int]) -> np.ndarray:
        return partial_trace(self.mat, self.dims, keep)

    def eigenvalues(self) -> np.ndarray:
        return herm_eig(self.mat)


def validate(
    mat: np.ndarray,
    dims: DimensionProfile | Iterable[int] | str,
    tolerances: Optional[ToleranceSettings] = None,
) -> DensityMatrix:
    """Check ``mat`` against the density-matrix axioms and wrap it.

    Raises :class:`NotHermitianError`, :class:`TraceNotOneError` or
    :class:`NotPSDError`; the stored matrix is the symmetrised input.
    """

    tol = tolerances or ToleranceSettings()
    dims = DimensionProfile.of(dims)
    mat = np.asarray(mat, dtype=complex)
    if mat.shape != (dims.D, dims.D):
        raise DimensionError(f"matrix of shape {mat.shape} does not match profile {dims}")
    if not np.all(np.isfinite(mat)):
        raise StateValidationError("matrix has non-finite entries")
    values = herm_eig(mat, tolerance=tol.hermitian)
    trace = np.trace(mat)
    if abs(trace - 1.0) > tol.trace:
        raise TraceNotOneError(complex(trace))
    if values[0] < -tol.psd:
        raise NotPSDError(float(values[0]))
    return DensityMatrix(dims=dims, mat=0.5 * (mat + dagger(mat)))


def from_ket(psi: np.ndarray, dims: DimensionProfile | Iterable[int] | str) -> DensityMatrix:
    """Projector onto the normalised state vector ``psi``."""

    psi = np.asarray(psi, dtype=complex).reshape(-1)
    norm = np.linalg.norm(psi)
    if norm == 0.0:
        raise StateValidationError("zero state vector")
    psi = psi / norm
    return validate(np.outer(psi, np.conj(psi)), dims)


def product_state(*factors: DensityMatrix) -> DensityMatrix:
    """Tensor product of states; the resulting profile must stay ascending."""

    dims = DimensionProfile(tuple(d for f in factors for d in f.dims))
    return validate(kron(*(f.mat for f in factors)), dims)


def purity(rho: DensityMatrix) -> float:
    """Global purity ``tr(rho^2)``."""

    return float(np.real(np.einsum("ij,ji->", rho.mat, rho.mat)))


def marginal_purity(rho: DensityMatrix, k: int) -> float:
    """Purity of the reduced state of subsystem ``k``."""

    k = rho.dims.check_index(k)
    reduced = rho.marginal([k])
    return float(np.real(np.einsum("ij,ji->", reduced, reduced)))


@lru_cache(maxsize=None)
def time_reversal_unitary(d: int) -> np.ndarray:
    """``exp(-i pi J_y)`` in the spin-(d-1)/2 representation, basis m = j, ..., -j."""

    j = (d - 1) / 2.0
    m = j - np.arange(d)
    raising = np.zeros((d, d), dtype=complex)
    for col in range(1, d):
        mm = m[col]
        raising[col - 1, col] = np.sqrt(j * (j + 1) - mm * (mm + 1))
    j_y = (raising - dagger(raising)) / 2j
    return expm(-1j * np.pi * j_y)


def time_reverse(rho: DensityMatrix) -> np.ndarray:
    """Locally time-reversed matrix ``U rho* U^dagger`` with ``U`` the product of spin flips."""

    u = kron(*(time_reversal_unitary(d) for d in rho.dims))
    return u @ np.conj(rho.mat) @ dagger(u)


def time_reversal_overlap(rho: DensityMatrix) -> float:
    """Reflection overlap ``Q = tr(rho rho~)``."""

    flipped = time_reverse(rho)
    value = np.einsum("ij,ji->", rho.mat, flipped)
    if abs(value.imag) > 1e-10:
        LOGGER.debug("time-reversal overlap has imaginary part %.3e", value.imag)
    return float(value.real)


def maximally_mixed(dims: DimensionProfile | Iterable[int] | str) -> DensityMatrix:
    dims = DimensionProfile.of(dims)
    return DensityMatrix(dims=dims, mat=np.eye(dims.D, dtype=complex) / dims.D)


__all__ = [
    "DensityMatrix",
    "from_ket",
    "marginal_purity",
    "maximally_mixed",
    "product_state",
    "purity",
    "time_reversal_overlap",
    "time_reversal_unitary",
    "time_reverse",
    "validate",
]
