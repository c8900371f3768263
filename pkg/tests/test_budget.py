"""Budget coordinates and the rationalised plane."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from budgetlab.budget import budget_decompose, budget_from_purities, budgets_from_xy, rationalize
from budgetlab.errors import DimensionError, DomainError
from budgetlab.linalg import DimensionProfile
from budgetlab.states.density import (
    marginal_purity,
    maximally_mixed,
    product_state,
    time_reversal_overlap,
    validate,
)
from budgetlab.states.ensembles import (
    make_rng,
    random_local_unitary,
    sample_haar_pure,
    sample_product_pure,
    sample_wishart,
)
from budgetlab.states.library import parse_state_spec


def test_bell_point(bell) -> None:
    point = budget_decompose(bell)
    assert point.P == pytest.approx(1.0)
    assert point.B == pytest.approx(3.0)
    assert point.B_L == pytest.approx(0.0, abs=1e-12)
    assert point.B_NL == pytest.approx(3.0)
    assert (point.X, point.Y, point.R) == pytest.approx((0.0, 1.0, 1.0), abs=1e-12)
    assert point.theta == pytest.approx(math.pi / 2)
    assert point.Q == pytest.approx(1.0)


def test_origin_has_no_angle() -> None:
    point = budget_decompose(maximally_mixed((2, 3)))
    assert point.B == pytest.approx(0.0, abs=1e-12)
    assert point.theta is None
    assert point.R == pytest.approx(0.0, abs=1e-12)


def test_werner_point() -> None:
    point = budget_decompose(parse_state_spec("werner:0.8"))
    assert point.B_NL == pytest.approx(1.92)
    assert point.B_L == pytest.approx(0.0, abs=1e-12)


def test_w_state_point() -> None:
    point = budget_decompose(parse_state_spec("w"))
    assert point.B_L == pytest.approx(1.0 / 3.0)
    assert point.B_NL == pytest.approx(20.0 / 3.0)


def test_purities_alone_match_the_state(bell) -> None:
    from_purities = budget_from_purities(1.0, [0.5, 0.5], (2, 2))
    from_state = budget_decompose(bell)
    assert from_purities.B_NL == pytest.approx(from_state.B_NL)
    assert from_purities.Q == pytest.approx(1.0)
    assert budget_from_purities(1.0, [0.5, 0.5, 0.5], (2, 2, 2)).Q is None


def test_purity_inputs_are_checked() -> None:
    with pytest.raises(DimensionError):
        budget_from_purities(1.0, [0.5], (2, 2))
    with pytest.raises(DomainError):
        budget_from_purities(1.0, [0.4, 0.5], (2, 2))
    with pytest.raises(DomainError):
        budget_from_purities(1.2, [0.5, 0.5], (2, 2))
    # marginals more polarised than the global state allows
    with pytest.raises(DomainError):
        budget_from_purities(0.3, [1.0, 1.0], (2, 2))


def test_rationalize_rejects_inconsistent_budgets() -> None:
    with pytest.raises(DomainError):
        rationalize(1.0, 1.0, 1.0, (2, 2))


def test_pure_product_point_is_the_extreme_corner(rng) -> None:
    point = budget_decompose(sample_product_pure((2, 2), rng))
    assert point.X**2 == pytest.approx(2.0 / 3.0)
    assert point.Y**2 == pytest.approx(1.0 / 3.0)
    assert point.Q == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=100_000))
def test_budget_conservation(seed: int) -> None:
    rng = make_rng(seed, 3)
    for dims in ((2, 2), (2, 3), (2, 2, 2)):
        rho = sample_wishart(dims, rng)
        point = budget_decompose(rho)
        assert point.B_L + point.B_NL == pytest.approx(point.B)
        assert point.X**2 + point.Y**2 == pytest.approx(point.R)
        assert 0.0 <= point.R <= 1.0 + 1e-10


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=100_000))
def test_two_qubit_points_stay_inside_the_wall(seed: int) -> None:
    rng = make_rng(seed, 4)
    for rho in (sample_wishart((2, 2), rng), sample_haar_pure((2, 2), rng)):
        point = budget_decompose(rho)
        assert point.X**2 <= 2.0 / 3.0 + 1e-8
        assert point.Q >= -1e-10
        assert point.Q == pytest.approx((1.0 - point.B_L + point.B_NL) / 4.0)


@pytest.mark.parametrize("x, y", [(0.0, 1.0), (0.5, 0.5), (0.3, 0.1), (0.8, 0.0)])
def test_budgets_from_xy_inverts_rationalize(x: float, y: float) -> None:
    P, local, nonlocal_ = budgets_from_xy(x, y, (2, 2))
    X, Y, R, _ = rationalize(local, nonlocal_, P, (2, 2))
    assert (X, Y) == pytest.approx((x, y))
    assert R == pytest.approx(x * x + y * y)


def test_budgets_from_xy_rejects_outside_points() -> None:
    with pytest.raises(DomainError):
        budgets_from_xy(1.0, 0.5, (2, 2))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=100_000))
def test_reflection_overlap_factorises_on_products(seed: int) -> None:
    rng = make_rng(seed, 5)
    for da, db in ((2, 2), (2, 3), (3, 3)):
        rho_a, rho_b = sample_wishart((da,), rng), sample_wishart((db,), rng)
        joint = product_state(rho_a, rho_b)
        expected = time_reversal_overlap(rho_a) * time_reversal_overlap(rho_b)
        assert time_reversal_overlap(joint) == pytest.approx(expected, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=100_000))
def test_budgets_are_invariant_under_local_unitaries(seed: int) -> None:
    rng = make_rng(seed, 6)
    for dims in ((2, 2), (2, 3), (2, 2, 2)):
        profile = DimensionProfile(dims)
        rho = sample_wishart(profile, rng)
        u = random_local_unitary(profile, rng)
        rotated = validate(u @ rho.mat @ u.conj().T, profile)
        before, after = budget_decompose(rho), budget_decompose(rotated)
        assert (after.P, after.B_L, after.B_NL) == pytest.approx((before.P, before.B_L, before.B_NL), abs=1e-10)
        for k in range(profile.n):
            assert marginal_purity(rotated, k) == pytest.approx(marginal_purity(rho, k), abs=1e-10)
        # the spin-flip reflection commutes with arbitrary local unitaries on qubits only
        if set(dims) == {2}:
            assert after.Q == pytest.approx(before.Q, abs=1e-10)
