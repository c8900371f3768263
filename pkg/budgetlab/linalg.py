"""Dense complex linear-algebra kernel for small multipartite operators.

Matrices are plain ``numpy.ndarray`` values of complex dtype. Subsystem layout
is described by a :class:`DimensionProfile`; subsystem indices are 0-based and
refer to the tensor factors in profile order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from .errors import DimensionError, NotHermitianError, NotPSDError

MAX_LOCAL_DIMENSION = 16
HERMITIAN_TOLERANCE = 1e-10
PSD_TOLERANCE = 1e-9

ComplexMatrix = np.ndarray


@dataclass(frozen=True)
class DimensionProfile:
    """Ordered local dimensions ``d_1 <= d_2 <= ... <= d_n`` of a composite system."""

    dims: Tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if not dims:
            raise DimensionError("a dimension profile needs at least one subsystem")
        if any(d < 2 for d in dims):
            raise DimensionError(f"every local dimension must be >= 2, got {dims}")
        if any(d > MAX_LOCAL_DIMENSION for d in dims):
            raise DimensionError(f"local dimensions above {MAX_LOCAL_DIMENSION} are not supported: {dims}")
        if list(dims) != sorted(dims):
            raise DimensionError(f"dimensions must be listed in ascending order, got {dims}")

    @classmethod
    def of(cls, dims: Union["DimensionProfile", Iterable[int], str]) -> "DimensionProfile":
        """Coerce a profile, an iterable of ints or a ``"2,3"`` string."""

        if isinstance(dims, DimensionProfile):
            return dims
        if isinstance(dims, str):
            try:
                parsed = tuple(int(part) for part in dims.replace("x", ",").split(",") if part.strip())
            except ValueError as exc:
                raise DimensionError(f"cannot parse dimension profile '{dims}'") from exc
            return cls(parsed)
        return cls(tuple(dims))

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def D(self) -> int:
        return int(np.prod(self.dims))

    @property
    def is_qubits(self) -> bool:
        return all(d == 2 for d in self.dims)

    @property
    def is_symmetric(self) -> bool:
        return len(set(self.dims)) == 1

    def check_index(self, index: int) -> int:
        if not 0 <= int(index) < self.n:
            raise DimensionError(f"subsystem index {index} out of range for {self.n} subsystems")
        return int(index)

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.dims)

    def __getitem__(self, index: int) -> int:
        return self.dims[index]

    def __str__(self) -> str:
        return "x".join(str(d) for d in self.dims)


def kron(*factors: ComplexMatrix) -> ComplexMatrix:
    """Tensor product of the given factors, left to right."""

    if not factors:
        return np.ones((1, 1), dtype=complex)
    return reduce(np.kron, (np.asarray(f, dtype=complex) for f in factors))


def dagger(m: ComplexMatrix) -> ComplexMatrix:
    return np.conj(np.asarray(m)).T


def hermitian_deviation(m: ComplexMatrix) -> float:
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - dagger(m))))


def _check_square(m: ComplexMatrix, dims: DimensionProfile) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (dims.D, dims.D):
        raise DimensionError(f"matrix of shape {m.shape} does not match profile {dims} (D={dims.D})")
    return m


def partial_trace(
    m: ComplexMatrix,
    dims: DimensionProfile,
    keep: Iterable[int],
) -> ComplexMatrix:
    """Trace out every subsystem not listed in ``keep``.

    Kept factors stay in profile order. Keeping nothing returns the 1x1 matrix
    holding the full trace.
    """

    dims = DimensionProfile.of(dims)
    m = _check_square(m, dims)
    kept = sorted({dims.check_index(k) for k in keep})
    tensor = m.reshape(dims.dims * 2)
    remaining = dims.n
    for index in sorted(set(range(dims.n)) - set(kept), reverse=True):
        tensor = np.trace(tensor, axis1=index, axis2=index + remaining)
        remaining -= 1
    size = int(np.prod([dims[k] for k in kept])) if kept else 1
    return np.asarray(tensor).reshape(size, size)


def partial_transpose(m: ComplexMatrix, dims: DimensionProfile, subsystem: int) -> ComplexMatrix:
    """Transpose the ``subsystem`` factor of ``m``."""

    dims = DimensionProfile.of(dims)
    m = _check_square(m, dims)
    k = dims.check_index(subsystem)
    tensor = m.reshape(dims.dims * 2)
    tensor = np.swapaxes(tensor, k, k + dims.n)
    return tensor.reshape(dims.D, dims.D)


def herm_eig(
    m: ComplexMatrix,
    *,
    vectors: bool = False,
    tolerance: float = HERMITIAN_TOLERANCE,
) -> Union[np.ndarray, Tuple[np.ndarray, np.ndarray]]:
    """Ascending eigenvalues (and optionally eigenvectors) of a Hermitian matrix.

    Inputs within ``tolerance`` of Hermitian are symmetrised first.
    """

    m = np.asarray(m, dtype=complex)
    deviation = hermitian_deviation(m)
    if deviation > tolerance:
        raise NotHermitianError(deviation)
    symmetric = 0.5 * (m + dagger(m))
    if vectors:
        values, vecs = np.linalg.eigh(symmetric)
        return values, vecs
    return np.linalg.eigvalsh(symmetric)


def singular_values(m: ComplexMatrix) -> np.ndarray:
    """Singular values in descending order."""

    m = np.asarray(m)
    if m.size == 0:
        return np.zeros(0)
    return np.linalg.svd(m, compute_uv=False)


def mat_power(m: ComplexMatrix, n: int, *, psd_tolerance: float = PSD_TOLERANCE) -> ComplexMatrix:
    """``m**n`` for a positive semidefinite Hermitian ``m`` via its eigenbasis."""

    if int(n) < 1:
        raise ValueError(f"matrix power must be a positive integer, got {n}")
    values, vecs = herm_eig(m, vectors=True)
    if values[0] < -psd_tolerance:
        raise NotPSDError(float(values[0]))
    powered = np.clip(values, 0.0, None) ** int(n)
    return (vecs * powered) @ dagger(vecs)


def embed_operator(
    op: ComplexMatrix,
    targets: Sequence[int],
    dims: DimensionProfile,
) -> ComplexMatrix:
    """Lift an operator acting on ``targets`` (in the given order) to the full space."""

    dims = DimensionProfile.of(dims)
    targets = [dims.check_index(t) for t in targets]
    if len(set(targets)) != len(targets):
        raise DimensionError(f"repeated target subsystems {targets}")
    target_dims = [dims[t] for t in targets]
    op = np.asarray(op, dtype=complex)
    size = int(np.prod(target_dims))
    if op.shape != (size, size):
        raise DimensionError(f"operator of shape {op.shape} does not act on subsystems {targets}")
    rest = [k for k in range(dims.n) if k not in targets]
    rest_size = int(np.prod([dims[k] for k in rest])) if rest else 1
    full = np.kron(op, np.eye(rest_size, dtype=complex))
    order = targets + rest
    local = [dims[k] for k in order]
    tensor = full.reshape(local * 2)
    inverse = np.argsort(order)
    axes = list(inverse) + [dims.n + i for i in inverse]
    return tensor.transpose(axes).reshape(dims.D, dims.D)


__all__ = [
    "ComplexMatrix",
    "DimensionProfile",
    "HERMITIAN_TOLERANCE",
    "PSD_TOLERANCE",
    "dagger",
    "embed_operator",
    "herm_eig",
    "hermitian_deviation",
    "kron",
    "mat_power",
    "partial_trace",
    "partial_transpose",
    "singular_values",
]
