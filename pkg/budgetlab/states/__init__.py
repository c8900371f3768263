"""Density matrices, their expansions, the canonical family and random ensembles."""

from .canonical import CanonicalParams, canonical_eigenvalues, canonical_params_for, canonical_two_qubit
from .decompositions import FanoComponents, PauliSpectrum, fano_decompose, pauli_spectrum, reconstruct
from .density import (
    DensityMatrix,
    from_ket,
    marginal_purity,
    maximally_mixed,
    purity,
    time_reversal_overlap,
    validate,
)
from .ensembles import (
    make_rng,
    sample_classical,
    sample_family,
    sample_haar_pure,
    sample_product_pure,
    sample_werner,
    sample_wishart,
    stream_rng,
)
from .library import parse_state_spec

__all__ = [
    "CanonicalParams",
    "DensityMatrix",
    "FanoComponents",
    "PauliSpectrum",
    "canonical_eigenvalues",
    "canonical_params_for",
    "canonical_two_qubit",
    "fano_decompose",
    "from_ket",
    "make_rng",
    "marginal_purity",
    "maximally_mixed",
    "parse_state_spec",
    "pauli_spectrum",
    "purity",
    "reconstruct",
    "sample_classical",
    "sample_family",
    "sample_haar_pure",
    "sample_product_pure",
    "sample_werner",
    "sample_wishart",
    "stream_rng",
    "time_reversal_overlap",
    "validate",
]
