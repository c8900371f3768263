"""Walk a few builtin states through the budget geometry and print a summary."""

from __future__ import annotations

import logging

from budgetlab.budget import budget_decompose
from budgetlab.channels.flows import arrow_check, sweep
from budgetlab.config import load_config
from budgetlab.envelopes import classify, feasibility_wall, qc_envelope, TierSpec
from budgetlab.resources import resource_report
from budgetlab.states.library import parse_state_spec

logging.basicConfig(level=logging.INFO, format="[%(levelname)s] %(message)s")

DEMO_STATES = ("bell", "werner:0.8", "chsh", "mixed-entangled", "mixed-separable", "classical", "product")


def main() -> None:
    config = load_config()

    print("state              B_L      B_NL     X^2      Y^2      flags")
    for name in DEMO_STATES:
        rho = parse_state_spec(name)
        point = budget_decompose(rho, config.tolerances)
        report = classify(point, rho.dims, config)
        print(f"{name:<18} {point.B_L:<8.4f} {point.B_NL:<8.4f} {point.X**2:<8.4f} {point.Y**2:<8.4f} {', '.join(report.flags)}")

    bell = parse_state_spec("bell")
    resources = resource_report(bell, config)
    print(f"\nBell: negativity {resources.negativity:.4f}, discord {resources.discord_value:.4f}, CHSH {resources.chsh_max:.4f}")

    for dims, m in (((2, 3), 1), ((2, 2, 2), 2)):
        vertices = qc_envelope(TierSpec(dims, m)).exact_vertices()
        print(f"QC:{m} on {dims}: " + " -> ".join(f"({x}, {y})" for x, y in vertices))
    wall = feasibility_wall((2, 2, 2)).exact_vertices()
    print("Three-qubit wall: " + " -> ".join(f"({x}, {y})" for x, y in wall))

    trajectory = sweep(bell, "amplitude-damping", state_label="bell", config=config)
    violations = arrow_check(trajectory, config.tolerances.arrow)
    print(f"\nAmplitude damping of Bell: {len(trajectory)} steps, {len(violations)} arrow violations")


if __name__ == "__main__":
    main()
