"""Kraus channels, decoherence sweeps and the arrow of decoherence."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from budgetlab.channels.flows import (
    arrow_check,
    purification_path,
    purify,
    sequential_depolarization,
    sweep,
)
from budgetlab.channels.kraus import (
    CHANNEL_KINDS,
    CORRELATED_KINDS,
    apply,
    make_channel,
    parse_channel_spec,
    resolve_targets,
)
from budgetlab.envelopes.hierarchy import TierSpec, qc_envelope
from budgetlab.errors import DimensionError, DomainError, UsageError
from budgetlab.linalg import DimensionProfile
from budgetlab.states.density import from_ket, maximally_mixed, purity, validate
from budgetlab.states.ensembles import make_rng, sample_wishart
from budgetlab.states.library import parse_state_spec


@pytest.mark.parametrize("kind", CHANNEL_KINDS)
@pytest.mark.parametrize("p", [0.0, 0.37, 1.0])
def test_channels_are_trace_preserving(kind: str, p: float) -> None:
    assert make_channel(kind, p, (2, 2)).completeness_error() < 1e-10


@pytest.mark.parametrize("kind", ["dephasing", "depolarizing", "amplitude-damping", "correlated-phase-flip"])
def test_qutrit_channels_are_trace_preserving(kind: str) -> None:
    assert make_channel(kind, 0.4, (2, 3)).completeness_error() < 1e-10


def test_full_depolarization_reaches_the_maximally_mixed_state(bell) -> None:
    out = apply(make_channel("depolarizing", 1.0, (2, 2)), bell)
    np.testing.assert_allclose(out.mat, np.eye(4) / 4, atol=1e-14)


def test_full_dephasing_removes_coherences(rng) -> None:
    rho = sample_wishart((2, 3), rng)
    out = apply(make_channel("dephasing", 1.0, (2, 3)), rho)
    np.testing.assert_allclose(out.mat, np.diag(np.diag(rho.mat)), atol=1e-14)


def test_full_amplitude_damping_reaches_the_ground_state(rng) -> None:
    out = apply(make_channel("amplitude-damping", 1.0, (2, 2)), sample_wishart((2, 2), rng))
    expected = np.zeros((4, 4))
    expected[0, 0] = 1.0
    np.testing.assert_allclose(out.mat, expected, atol=1e-14)


def test_identity_channel(bell) -> None:
    np.testing.assert_allclose(apply(make_channel("identity", 0.5, (2, 2)), bell).mat, bell.mat, atol=1e-15)


def test_channel_errors(bell) -> None:
    with pytest.raises(UsageError):
        make_channel("bit-rot", 0.1, (2, 2))
    with pytest.raises(DomainError):
        make_channel("dephasing", 1.5, (2, 2))
    with pytest.raises(DimensionError):
        make_channel("correlated-phase-flip", 0.1, (2, 2), "0")
    with pytest.raises(DimensionError):
        make_channel("correlated-amplitude-damping", 0.1, (2, 3))
    with pytest.raises(DimensionError):
        apply(make_channel("dephasing", 0.1, (2, 3)), bell)


def test_target_resolution() -> None:
    dims = DimensionProfile((2, 2, 2))
    assert resolve_targets("dephasing", dims, None) == (0, 1, 2)
    assert resolve_targets("dephasing", dims, "all") == (0, 1, 2)
    assert resolve_targets("dephasing", dims, "2,0") == (2, 0)
    assert resolve_targets(CORRELATED_KINDS[0], dims, None) == (0, 1)
    with pytest.raises(UsageError):
        resolve_targets("dephasing", dims, "a,b")
    with pytest.raises(DimensionError):
        resolve_targets("dephasing", dims, "1,1")
    with pytest.raises(DimensionError):
        resolve_targets("dephasing", dims, "3")


def test_parse_channel_spec() -> None:
    assert parse_channel_spec("depolarising:0") == ("depolarizing", "0")
    assert parse_channel_spec("amplitude_damping") == ("amplitude-damping", None)
    with pytest.raises(UsageError):
        parse_channel_spec("teleport:0")


# ---- sweeps


def test_bell_depolarization_sweep(bell, config) -> None:
    trajectory = sweep(bell, "depolarizing", config=config)
    assert len(trajectory) == config.trajectories.steps
    radii = [pt.R for pt in trajectory.points]
    for pt in trajectory.points:
        assert pt.B_L == pytest.approx(0.0, abs=1e-12)
    assert all(b <= a + 1e-12 for a, b in zip(radii, radii[1:]))
    assert radii[0] == pytest.approx(1.0)
    assert radii[-1] == pytest.approx(0.0, abs=1e-12)
    assert arrow_check(trajectory) == []


def test_sweep_frame(bell, config) -> None:
    frame = sweep(bell, "dephasing", target="0", steps=5, config=config).to_frame()
    assert list(frame["step"]) == [0, 1, 2, 3, 4]
    assert frame["p"].iloc[-1] == pytest.approx(1.0)
    assert "BNL" in frame.columns


def test_sweeps_need_two_steps(bell, config) -> None:
    with pytest.raises(DomainError):
        sweep(bell, "depolarizing", steps=1, config=config)


def test_sequential_depolarization(bell, config) -> None:
    trajectory = sequential_depolarization(bell, config=config)
    steps = config.trajectories.steps
    assert len(trajectory) == 2 * steps - 1
    frame = trajectory.to_frame()
    assert set(frame["stage"]) == {0, 1}
    assert frame["p"].is_monotonic_increasing
    assert trajectory.points[-1].B == pytest.approx(0.0, abs=1e-12)
    # after the first stage the state is I/2 (x) I/2 already
    assert trajectory.points[steps - 1].B == pytest.approx(0.0, abs=1e-12)


def test_depolarizing_the_free_qubit_traces_the_top_tier(config) -> None:
    trajectory = sweep(parse_state_spec("biseparable"), "depolarizing", target="0", steps=11, config=config)
    for pt in trajectory.points:
        assert pt.B_NL == pytest.approx(3.0 + 3.0 * pt.B_L)
    assert (trajectory.points[0].B_L, trajectory.points[0].B_NL) == pytest.approx((1.0, 6.0))
    assert (trajectory.points[-1].B_L, trajectory.points[-1].B_NL) == pytest.approx((0.0, 3.0), abs=1e-12)


def test_sequential_order_on_qubit_qutrit(rng, config) -> None:
    trajectory = sequential_depolarization(sample_wishart((2, 3), rng), order=[1, 0], steps=3, config=config)
    assert trajectory.channel.endswith("1,0")
    assert len(trajectory) == 5


# ---- purification and the arrow


def test_amplitude_damping_respects_the_arrow(mixed_entangled, config) -> None:
    assert arrow_check(sweep(mixed_entangled, "amplitude-damping", config=config)) == []


def test_purification_violates_the_arrow(mixed_entangled, config) -> None:
    trajectory = purification_path(mixed_entangled, config=config)
    assert len(trajectory) == config.trajectories.purification_max_power
    purities = [pt.P for pt in trajectory.points]
    assert purities == sorted(purities)
    assert arrow_check(trajectory) != []


def test_purify(rng) -> None:
    rho = sample_wishart((2, 2), rng)
    assert purity(purify(rho, 1)) == pytest.approx(purity(rho))
    assert purity(purify(rho, 40)) > purity(rho)
    with pytest.raises(DomainError):
        purify(rho, 0)


def test_purifying_the_mixed_state_changes_nothing() -> None:
    rho = maximally_mixed((2, 2))
    np.testing.assert_allclose(purify(rho, 7).mat, rho.mat, atol=1e-14)


def test_arrow_check_on_pairs() -> None:
    assert arrow_check([(0.5, 0.2), (0.6, 0.3), (0.7, 0.25)]) == [1]
    with pytest.raises(DomainError):
        arrow_check([(0.5, 0.2)])


# ---- composition and the unital kinds


@settings(max_examples=25, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=100_000),
    p1=st.floats(min_value=0.0, max_value=1.0),
    p2=st.floats(min_value=0.0, max_value=1.0),
)
def test_depolarizing_strengths_compose(seed: int, p1: float, p2: float) -> None:
    rho = sample_wishart((2, 3), make_rng(seed, 11))
    for target in ("0", "1", "all"):
        twice = apply(make_channel("depolarizing", p2, (2, 3), target), apply(make_channel("depolarizing", p1, (2, 3), target), rho))
        once = apply(make_channel("depolarizing", 1.0 - (1.0 - p1) * (1.0 - p2), (2, 3), target), rho)
        np.testing.assert_allclose(twice.mat, once.mat, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=100_000), p=st.floats(min_value=0.0, max_value=1.0))
@pytest.mark.parametrize("kind", ["dephasing", "depolarizing", "correlated-phase-flip"])
def test_unital_channels_never_raise_purity(kind: str, seed: int, p: float) -> None:
    rng = make_rng(seed, 12)
    for dims in ((2, 2), (2, 3)):
        rho = sample_wishart(dims, rng)
        assert purity(apply(make_channel(kind, p, dims), rho)) <= purity(rho) + 1e-12


def test_correlated_amplitude_damping_shifts_budget_into_correlations(config) -> None:
    seed = validate(0.5 * np.diag([0.0, 0.0, 0.0, 1.0]) + 0.5 * np.eye(4) / 4.0, (2, 2))
    points = sweep(seed, "correlated-amplitude-damping", config=config).points
    shifts = [
        b for a, b in zip(points, points[1:]) if b.B_NL / b.B > a.B_NL / a.B + 1e-12 and b.P < a.P - 1e-12
    ]
    assert shifts
    # the diagonal seed keeps its zz correlation while the local polarisation drains
    assert all(pt.B_NL == pytest.approx(0.25) for pt in points)


# ---- synchronisation


def test_synchronization_traces_the_classical_envelope(config) -> None:
    rho0 = from_ket(np.eye(8)[0], (2, 2, 2))
    envelope = qc_envelope(TierSpec(DimensionProfile((2, 2, 2)), 1))
    trajectory = sweep(rho0, "synchronization", steps=11, config=config)
    for pt in trajectory.points:
        assert pt.B_NL == pytest.approx(pt.B_L / 3.0 + 3.0)
        assert pt.B_NL == pytest.approx(envelope.evaluate(pt.B_L))
        assert 3.0 * pt.Y**2 + 2.0 * pt.X**2 == pytest.approx(18.0 / 7.0)
    assert (trajectory.points[0].B_L, trajectory.points[0].B_NL) == pytest.approx((3.0, 4.0))
    assert (trajectory.points[-1].B_L, trajectory.points[-1].B_NL) == pytest.approx((0.0, 3.0), abs=1e-12)


def test_synchronization_acts_on_the_whole_register(bell) -> None:
    with pytest.raises(DimensionError):
        make_channel("synchronization", 0.2, (2, 2, 2), "0,1")
    assert make_channel("synchronization", 0.3, (2, 2, 2), "2,1,0").completeness_error() < 1e-10
    assert parse_channel_spec("synchronisation") == ("synchronization", None)
    out = apply(make_channel("synchronization", 1.0, (2, 2)), bell)
    np.testing.assert_allclose(out.mat, np.diag([0.5, 0.0, 0.0, 0.5]), atol=1e-14)
