"""Envelope construction, walls and region classification."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from budgetlab.budget import BudgetPoint, budget_decompose, budget_from_purities, rationalize
from budgetlab.envelopes.analytic import (
    check_frustrated_ansatz,
    chsh_guarantee_2q,
    chsh_guarantee_curve,
    classical_envelope_2q,
    classical_envelope_curve_2q,
    frustrated_curve,
    frustrated_curve_23,
    pure_line,
    q_wall_2q,
    separability_radius,
)
from budgetlab.envelopes.classical import cn_envelope, exact_oracle_at_zero, oracle_max_nonlocal
from budgetlab.envelopes.curves import EnvelopeCurve, LineSegment, QuadraticArc, exact_polyline, polyline
from budgetlab.envelopes.hierarchy import TierSpec, hinge_vertices, qc_envelope, top_tier, upper_hull
from budgetlab.envelopes.regions import classify, frustrated_margin
from budgetlab.envelopes.walls import (
    feasibility_wall,
    find_anchor,
    junction_vertices,
    local_overlap,
    trace_wall,
)
from budgetlab.errors import DomainError
from budgetlab.linalg import DimensionProfile
from budgetlab.states.density import maximally_mixed, validate
from budgetlab.states.ensembles import make_rng, sample_wishart
from budgetlab.states.library import parse_state_spec
from budgetlab.verification import VERTEX_ORACLE

F = Fraction


# ---- quantum-classical tiers


@pytest.mark.parametrize("name", sorted(VERTEX_ORACLE))
def test_qc_vertices_are_exact(name: str) -> None:
    dims, m, expected = VERTEX_ORACLE[name]
    vertices = qc_envelope(TierSpec(DimensionProfile(dims), m)).exact_vertices()
    assert vertices == [(F(x), F(y)) for x, y in expected]


def test_qutrit_pair_tier_lies_on_one_line() -> None:
    curve = qc_envelope(TierSpec(DimensionProfile((3, 3)), 1))
    assert len(curve.pieces) == 1
    assert curve.pieces[0].exact_slope() == F(1, 2)
    assert curve.evaluate(2.0) == pytest.approx(3.0)


def test_qubit_qutrit_hinge() -> None:
    assert hinge_vertices(TierSpec(DimensionProfile((2, 3)), 1)) == [(F(1, 2), F(3, 2))]


def test_upper_hull_drops_dented_points() -> None:
    points = [(F(0), F(3)), (F(1), F(3)), (F(2), F(4)), (F(4), F(4))]
    assert upper_hull(points) == [(F(0), F(3)), (F(2), F(4)), (F(4), F(4))]


def test_tier_parsing() -> None:
    dims = DimensionProfile((2, 2, 2))
    assert TierSpec.parse("c", dims).is_classical
    assert TierSpec.parse("qc:2", dims).label == "QC:2"
    assert top_tier(dims) == TierSpec(dims, 2)
    with pytest.raises(DomainError):
        TierSpec.parse("qc:3", dims)
    with pytest.raises(DomainError):
        TierSpec.parse("quantum", dims)
    with pytest.raises(DomainError):
        qc_envelope(TierSpec(dims, 0))


# ---- curves


def test_budget_line_maps_to_arc() -> None:
    arc = qc_envelope(TierSpec(DimensionProfile((3, 3)), 1)).to_rationalised().pieces[0]
    assert isinstance(arc, QuadraticArc)
    assert arc.start == pytest.approx((0.0, math.sqrt(0.75)))
    assert arc.end == pytest.approx((math.sqrt(0.5), math.sqrt(0.5)))
    assert (arc.a / arc.c, arc.b / arc.c) == pytest.approx((1.5 / 2.25, 3.0 / 2.25))


def test_classical_curve_matches_closed_form() -> None:
    curve = classical_envelope_curve_2q("rationalised")
    for x in (0.0, 0.2, 0.5, 0.8):
        assert curve.evaluate(x) == pytest.approx(classical_envelope_2q(x))


def test_chsh_curve_matches_closed_form() -> None:
    curve = chsh_guarantee_curve("rationalised")
    for x in (0.0, 0.3, 0.6, math.sqrt(0.5)):
        assert curve.evaluate(x) == pytest.approx(chsh_guarantee_2q(x))
    assert chsh_guarantee_2q(0.0) == pytest.approx(math.sqrt(0.8))


def test_two_qubit_wall_is_vertical() -> None:
    wall = q_wall_2q()
    assert len(wall.pieces) == 1
    segment = wall.pieces[0]
    assert isinstance(segment, LineSegment) and segment.is_vertical
    assert segment.v0[0] ** 2 == pytest.approx(2.0 / 3.0)


def test_pure_line_is_the_unit_circle() -> None:
    for x, y in pure_line((2, 3), "rationalised").sample(9):
        assert x * x + y * y == pytest.approx(1.0)


def test_separability_radius() -> None:
    assert separability_radius() == pytest.approx(1.0 / 3.0)
    assert separability_radius((2, 3)) == pytest.approx(0.2)


def test_curves_reject_gaps() -> None:
    with pytest.raises(DomainError):
        EnvelopeCurve(
            label="broken",
            plane="budget",
            pieces=(LineSegment((0.0, 1.0), (1.0, 1.0)), LineSegment((2.0, 1.0), (3.0, 1.0))),
        )


def test_numeric_curves_have_no_exact_vertices() -> None:
    with pytest.raises(DomainError):
        polyline("C", "budget", [(0.0, 1.0), (1.0, 1.0)]).exact_vertices()
    assert exact_polyline("x", [(F(0), F(1)), (F(1), F(1))]).exact_vertices() == [(F(0), F(1)), (F(1), F(1))]


def test_frustrated_curve() -> None:
    assert frustrated_curve_23(2.0) == pytest.approx(0.0)
    assert frustrated_curve_23(4.5) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        frustrated_curve_23(1.0)
    curve = frustrated_curve(11)
    assert curve.vertices()[0] == pytest.approx((0.0, 2.0))
    check = check_frustrated_ansatz()
    assert check.deviation == pytest.approx(0.0, abs=1e-12)
    assert (check.point.B_L, check.point.B_NL) == pytest.approx((0.0, 2.0), abs=1e-12)


# ---- classical envelope


def test_oracle_values() -> None:
    value, distribution = oracle_max_nonlocal((2, 3), 0.0)
    assert value == pytest.approx(2.0 / 3.0)
    assert distribution.sum() == pytest.approx(1.0)
    assert exact_oracle_at_zero((2, 3)) == F(2, 3)
    assert exact_oracle_at_zero((2, 2)) == F(1)


def test_two_qubit_classical_envelope_is_flat(config) -> None:
    curve = cn_envelope((2, 2), grid=[0.0, 0.5, 1.0, 2.0], config=config)
    for value in curve.notes["values"]:
        assert value == pytest.approx(1.0, abs=1e-6)


def test_qubit_qutrit_classical_envelope_on_axis(config) -> None:
    curve = cn_envelope((2, 3), grid=[0.0, 1.0], config=config)
    assert curve.notes["values"][0] == pytest.approx(2.0 / 3.0, abs=1e-3)
    assert curve.notes["values"][1] >= curve.notes["values"][0]


def test_classical_envelope_grid_is_checked(config) -> None:
    with pytest.raises(DomainError):
        cn_envelope((2, 2), grid=[0.0, 3.0], config=config)


# ---- walls


@pytest.mark.parametrize(
    "dims, expected",
    [
        ((2, 2), [(2, 1), (1, 0), (0, 0)]),
        ((2, 3), [(3, 2), (2, 0), (0, 0)]),
        ((3, 3), [(4, 4), (2, 0), (0, 0)]),
        ((2, 2, 2), [(3, 4), (2, 1), (1, 0), (0, 0)]),
    ],
)
def test_junctions(dims, expected) -> None:
    assert junction_vertices(dims) == [(F(x), F(y)) for x, y in expected]


@pytest.mark.parametrize(
    "dims, expected",
    [
        ((2, 2), [(2, 1), (1, 0)]),
        ((2, 3), [(3, 2), (2, 0)]),
        ((3, 3), [(4, 4), (2, 0)]),
        ((2, 2, 2), [(3, 4), (2, 1), (1, 0)]),
    ],
)
def test_feasibility_wall(dims, expected) -> None:
    assert feasibility_wall(dims).exact_vertices() == [(F(x), F(y)) for x, y in expected]


@pytest.mark.parametrize("dims, c", [((2, 3), 1.6), ((3, 3), 1.5)])
def test_wall_ellipses(dims, c: float) -> None:
    arc = feasibility_wall(dims, plane="rationalised").pieces[0]
    for x, y in arc.sample(9):
        assert 2 * x * x + y * y == pytest.approx(c)


def test_three_qubit_wall_roof_and_cliff() -> None:
    roof, cliff = feasibility_wall((2, 2, 2), plane="rationalised").pieces
    for x, y in roof.sample(9):
        assert 2 * x * x + y * y == pytest.approx(10.0 / 7.0)
    assert isinstance(cliff, LineSegment) and cliff.is_vertical
    assert cliff.v0[0] ** 2 == pytest.approx(4.0 / 7.0)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_find_anchor(d: int) -> None:
    psi = find_anchor(d, make_rng(5, d), restarts=20)
    assert local_overlap(psi) < 1e-8


def test_traced_wall_matches_exact_wall(config) -> None:
    for dims in ((2, 2), (3, 3)):
        traced = trace_wall(dims, config)
        assert traced.max_deviation < 1e-8
        assert traced.max_overlap < 1e-8
        expected = [(float(x), float(y)) for x, y in feasibility_wall(dims).exact_vertices()]
        assert traced.curve.vertices() == [pytest.approx(v, abs=1e-9) for v in expected]


# ---- classification


def test_bell_flags(bell, config) -> None:
    report = classify(budget_decompose(bell), (2, 2), config)
    assert set(report.flags) == {"guaranteed-discord", "guaranteed-npt", "steerable-guaranteed", "chsh-guaranteed"}
    assert report.margins["C"] == pytest.approx(1.0 - math.sqrt(2.0 / 3.0))


def test_flags_from_purities_alone(config) -> None:
    report = classify(budget_from_purities(1.0, [0.5, 0.5], (2, 2)), (2, 2), config)
    assert report.has("guaranteed-npt") and report.has("chsh-guaranteed")


def test_chsh_possible_band(config) -> None:
    report = classify(budget_decompose(parse_state_spec("werner:0.65")), (2, 2), config)
    assert report.has("chsh-possible")
    assert not report.has("chsh-guaranteed")
    assert report.has("steerable-guaranteed")


def test_mixed_states_are_absolutely_separable(config) -> None:
    report = classify(budget_decompose(maximally_mixed((2, 2))), (2, 2), config)
    assert report.has("absolutely-separable")
    assert report.has("classically-feasible")
    assert not report.unphysical


def test_points_beyond_the_wall_are_unphysical(config) -> None:
    P = 0.75
    x, y, r, theta = rationalize(2.0, 0.0, P, (2, 2))
    point = BudgetPoint(P=P, Q=None, B=2.0, B_L=2.0, B_NL=0.0, X=x, Y=y, R=r, theta=theta)
    report = classify(point, (2, 2), config)
    assert report.flags == ["unphysical"]
    assert report.margins["wall"] == pytest.approx(-1.0)


def test_w_state_is_above_the_top_tier(config) -> None:
    report = classify(budget_decompose(parse_state_spec("w")), (2, 2, 2), config)
    assert report.has("guaranteed-npt:2")
    assert report.has("guaranteed-gme")
    assert report.has("guaranteed-npt:1")


def test_biseparable_state_is_below_the_top_tier(config) -> None:
    report = classify(budget_decompose(parse_state_spec("biseparable")), (2, 2, 2), config)
    assert not report.has("guaranteed-gme")


def test_points_past_the_frustrated_curve_are_unphysical(config) -> None:
    point = budget_from_purities(2.0 / 3.0, [0.5, 1.0 / 3.0], (2, 3))
    assert (point.B_L, point.B_NL) == pytest.approx((0.0, 3.0), abs=1e-12)
    assert point.R < 1.0
    report = classify(point, (2, 3), config)
    assert report.flags == ["unphysical"]
    assert report.margins["frustrated"] == pytest.approx(-(5.0 - math.sqrt(24.0)))


@pytest.mark.parametrize("weight", [2.0 / 3.0, 0.8, 0.95])
def test_frustrated_ansatz_sits_on_the_boundary(weight: float) -> None:
    point = budget_decompose(parse_state_spec(f"frustrated:{weight}"))
    assert frustrated_margin(point) == pytest.approx(0.0, abs=1e-10)


def _budget_point(local_budget: float, nonlocal_budget: float, dims) -> BudgetPoint:
    profile = DimensionProfile.of(dims)
    P = (1.0 + local_budget + nonlocal_budget) / profile.D
    x, y, r, theta = rationalize(local_budget, nonlocal_budget, P, profile)
    return BudgetPoint(P=P, Q=None, B=profile.D * P - 1.0, B_L=local_budget, B_NL=nonlocal_budget, X=x, Y=y, R=r, theta=theta)


def _guarantees(flags) -> set:
    return {f for f in flags if f.startswith("guaranteed") or f.endswith("-guaranteed")}


@settings(max_examples=40, deadline=None)
@given(local=st.floats(min_value=0.0, max_value=2.0), steps=st.integers(min_value=2, max_value=12))
def test_raising_the_nonlocal_budget_keeps_every_guarantee(local: float, steps: int) -> None:
    floor, ceiling = max(0.0, local - 1.0), 3.0 - local
    previous: set = set()
    for i in range(steps + 1):
        bnl = floor + (ceiling - floor) * i / steps
        report = classify(_budget_point(local, bnl, (2, 2)), (2, 2))
        assert not report.unphysical
        current = _guarantees(report.flags)
        assert previous <= current
        previous = current


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=100_000))
def test_depolarizing_ray_never_adds_a_guarantee(seed: int) -> None:
    rho = sample_wishart((2, 2), make_rng(seed, 8))
    previous = None
    for p in np.linspace(0.0, 1.0, 11):
        mixed = validate((1.0 - p) * rho.mat + p * np.eye(4) / 4.0, (2, 2))
        current = _guarantees(classify(budget_decompose(mixed), (2, 2)).flags)
        if previous is not None:
            assert current <= previous
        previous = current
    assert previous == set()


@settings(max_examples=4, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(fraction=st.floats(min_value=0.0, max_value=1.0))
@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (2, 2, 2)])
def test_classical_envelope_stays_below_the_top_tier(config, dims, fraction: float) -> None:
    profile = DimensionProfile(dims)
    local = fraction * sum(d - 1 for d in dims)
    value = cn_envelope(profile, grid=[local], config=config).notes["values"][0]
    ceiling = qc_envelope(top_tier(profile)).evaluate(local)
    if ceiling is not None:
        assert value <= ceiling + 1e-9
