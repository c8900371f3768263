"""Density matrices, expansions, the canonical family, ensembles and the state library."""

import math

import numpy as np
import pytest

from budgetlab.budget import budget_decompose
from budgetlab.errors import (
    DimensionError,
    DomainError,
    FilterExhaustedError,
    NotHermitianError,
    NotPSDError,
    TraceNotOneError,
    UsageError,
)
from budgetlab.io import write_state_file
from budgetlab.resources.measures import negativity
from budgetlab.states.canonical import (
    CanonicalParams,
    canonical_eigenvalues,
    canonical_params_for,
    canonical_params_for_xy,
    canonical_two_qubit,
)
from budgetlab.states.decompositions import fano_decompose, pauli_spectrum, reconstruct
from budgetlab.states.density import (
    from_ket,
    marginal_purity,
    maximally_mixed,
    purity,
    time_reversal_overlap,
    validate,
)
from budgetlab.states.ensembles import (
    METHOD_FAMILIES,
    sample_family,
    sample_werner,
    sample_wishart,
    stream_rng,
)
from budgetlab.config import SamplingSettings
from budgetlab.states.library import builtin_names, load_state_file, parse_state_spec

# ---- validation


def test_validate_rejects_invalid_matrices() -> None:
    with pytest.raises(NotHermitianError):
        validate(np.array([[0.5, 1.0], [0.0, 0.5]]), (2,))
    with pytest.raises(TraceNotOneError):
        validate(np.eye(2), (2,))
    with pytest.raises(NotPSDError) as info:
        validate(np.diag([1.5, -0.5]), (2,))
    assert info.value.min_eigenvalue == pytest.approx(-0.5)
    with pytest.raises(DimensionError):
        validate(np.eye(4) / 4, (2, 3))


def test_validation_errors_are_value_errors() -> None:
    with pytest.raises(ValueError):
        validate(np.eye(2), (2,))


def test_from_ket_normalises() -> None:
    rho = from_ket(np.array([3.0, 4.0]), (2,))
    assert np.trace(rho.mat).real == pytest.approx(1.0)
    assert purity(rho) == pytest.approx(1.0)


def test_purities(bell) -> None:
    assert purity(bell) == pytest.approx(1.0)
    assert marginal_purity(bell, 0) == pytest.approx(0.5)
    assert purity(maximally_mixed((2, 3))) == pytest.approx(1.0 / 6.0)


def test_time_reversal_overlap(bell) -> None:
    assert time_reversal_overlap(bell) == pytest.approx(1.0)
    assert time_reversal_overlap(parse_state_spec("product")) == pytest.approx(0.0, abs=1e-12)
    assert time_reversal_overlap(maximally_mixed((2, 2))) == pytest.approx(0.25)


# ---- expansions


def test_fano_decomposition_of_bell(bell) -> None:
    fano = fano_decompose(bell)
    np.testing.assert_allclose(fano.r, 0.0, atol=1e-14)
    np.testing.assert_allclose(fano.s, 0.0, atol=1e-14)
    np.testing.assert_allclose(fano.t, np.diag([1.0, -1.0, 1.0]), atol=1e-14)
    assert fano.nonlocal_budget == pytest.approx(3.0)
    np.testing.assert_allclose(reconstruct(fano).mat, bell.mat, atol=1e-14)


def test_fano_requires_two_qubits() -> None:
    with pytest.raises(DimensionError):
        fano_decompose(maximally_mixed((2, 3)))


def test_pauli_spectrum_of_bell(bell) -> None:
    spectrum = pauli_spectrum(bell)
    assert spectrum.n_P == 15
    assert spectrum.nonzero() == pytest.approx({"XX": 1.0, "YY": -1.0, "ZZ": 1.0})
    assert spectrum.budget == pytest.approx(3.0)


def test_pauli_spectrum_budget_matches_purity(rng) -> None:
    rho = sample_wishart((2, 2, 2), rng)
    assert pauli_spectrum(rho).budget == pytest.approx(8 * purity(rho) - 1.0)


# ---- canonical family


@pytest.mark.parametrize("mu, alpha", [(0.0, 0.0), (0.3, 0.4), (0.8, 1.2), (1.0, 0.0), (1.0, math.pi / 2)])
def test_canonical_eigenvalues_match_matrix(mu: float, alpha: float) -> None:
    params = CanonicalParams(mu, alpha)
    state = canonical_two_qubit(params)
    np.testing.assert_allclose(np.sort(canonical_eigenvalues(params)), state.eigenvalues(), atol=1e-12)
    point = budget_decompose(state)
    assert (point.B_L, point.B_NL) == pytest.approx(params.budgets())


def test_canonical_corners() -> None:
    assert CanonicalParams(0.0, 0.0).budgets() == pytest.approx((1.0, 0.0))
    assert CanonicalParams(0.0, math.pi / 2).budgets() == pytest.approx((0.0, 0.0))
    assert CanonicalParams(1.0, math.pi / 2).budgets() == pytest.approx((0.0, 3.0))
    np.testing.assert_allclose(canonical_two_qubit(CanonicalParams(0.0, math.pi / 2)).mat, np.eye(4) / 4, atol=1e-14)


@pytest.mark.parametrize("local, nonlocal_", [(0.0, 3.0), (0.5, 1.0), (1.2, 0.5), (2.0, 1.0), (1.0, 0.0)])
def test_canonical_inverse(local: float, nonlocal_: float) -> None:
    assert canonical_params_for(local, nonlocal_).budgets() == pytest.approx((local, nonlocal_), abs=1e-10)


def test_canonical_inverse_rejects_infeasible() -> None:
    with pytest.raises(DomainError):
        canonical_params_for(2.0, 0.0)
    with pytest.raises(DomainError):
        canonical_params_for_xy(1.0, 1.0)


# ---- ensembles


def test_streams_are_reproducible(config) -> None:
    first = [rho.mat for rho in sample_family("wishart", (2, 2), 3, config)]
    second = [rho.mat for rho in sample_family("wishart", (2, 2), 3, config)]
    for a, b in zip(first, second):
        np.testing.assert_array_equal(a, b)
    other = next(sample_family("wishart", (2, 2), 1, config, seed=config.sampling.seed + 1))
    assert not np.allclose(other.mat, first[0])


def test_stream_names_are_checked() -> None:
    with pytest.raises(UsageError):
        stream_rng(1, "nope")


@pytest.mark.parametrize("family", METHOD_FAMILIES)
def test_family_samples_are_states(family: str, config) -> None:
    for rho in sample_family(family, (2, 2), 5, config):
        assert rho.eigenvalues()[0] >= -1e-10


def test_family_properties(config) -> None:
    for rho in sample_family("classical", (2, 2), 5, config):
        np.testing.assert_allclose(rho.mat, np.diag(np.diag(rho.mat)))
    for rho in sample_family("pure-product", (2, 2), 5, config):
        assert purity(rho) == pytest.approx(1.0)
        assert negativity(rho) == pytest.approx(0.0, abs=1e-10)
    for rho in sample_family("wishart-npt", (2, 2), 5, config):
        assert negativity(rho) > 1e-8
    for rho in sample_family("wishart-ppt", (2, 2), 5, config):
        assert negativity(rho) <= 1e-8


def test_werner_state() -> None:
    point = budget_decompose(sample_werner(0.8))
    assert point.B_NL == pytest.approx(3 * 0.64)
    with pytest.raises(DomainError):
        sample_werner(1.5)
    with pytest.raises(DimensionError):
        sample_werner(0.5, dims=(2, 3))


def test_wishart_filter_exhaustion(rng) -> None:
    settings = SamplingSettings(wishart_retry_limit=5, ppt_purity_max=0.01)
    with pytest.raises(FilterExhaustedError) as info:
        sample_wishart((2, 2), rng, "ppt-mixed", settings)
    assert info.value.retries == 5


# ---- library


def test_builtin_names_listed() -> None:
    names = builtin_names()
    for name in ("bell", "ghz", "w", "product", "classical", "werner:<p>"):
        assert name in names


@pytest.mark.parametrize(
    "spec, dims, expected",
    [("bell", (2, 2), 3.0), ("ghz", (2, 2, 2), 7.0), ("w", (2, 2, 2), 20.0 / 3.0), ("werner:0.8", (2, 2), 1.92)],
)
def test_builtin_nonlocal_budgets(spec: str, dims, expected: float) -> None:
    rho = parse_state_spec(spec)
    assert rho.dims.dims == dims
    assert budget_decompose(rho).B_NL == pytest.approx(expected)


def test_qutrit_bell_state() -> None:
    point = budget_decompose(parse_state_spec("bell", "3,3"))
    assert (point.B_L, point.B_NL) == pytest.approx((0.0, 8.0), abs=1e-12)


def test_parse_errors() -> None:
    with pytest.raises(UsageError):
        parse_state_spec("unicorn")
    with pytest.raises(UsageError):
        parse_state_spec("bell:0.5")
    with pytest.raises(UsageError):
        parse_state_spec("werner:abc")
    with pytest.raises(DimensionError):
        parse_state_spec("chsh", "2,2,2")


def test_state_file_round_trip(tmp_path, mixed_entangled) -> None:
    rotated = validate(
        0.9 * mixed_entangled.mat + 0.025 * np.eye(4) + 0.01j * (np.eye(4, k=1) - np.eye(4, k=-1)),
        (2, 2),
    )
    path = write_state_file(rotated, tmp_path / "state.json", label="rotated")
    loaded = parse_state_spec(str(path))
    np.testing.assert_array_equal(loaded.mat, rotated.mat)
    assert loaded.dims == rotated.dims


def test_load_state_file_reports_bad_files(tmp_path) -> None:
    path = tmp_path / "broken.json"
    path.write_text("{\"dims\": [2]}", encoding="utf-8")
    with pytest.raises(UsageError):
        load_state_file(path)
