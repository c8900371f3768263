"""Command-line entry point: ``budgetlab <command> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from . import __version__
from .budget import budget_decompose, budget_from_purities
from .channels.flows import arrow_check, purification_path, sequential_depolarization, sweep
from .channels.kraus import CHANNEL_KINDS, parse_channel_spec
from .config import AppConfig, load_config
from .envelopes.analytic import (
    chsh_guarantee_curve,
    classical_envelope_curve_2q,
    frustrated_curve,
    pure_line,
    separability_curve,
)
from .envelopes.classical import cn_envelope
from .envelopes.curves import EnvelopeCurve
from .envelopes.hierarchy import TierSpec, qc_envelope
from .envelopes.regions import classify
from .envelopes.walls import feasibility_wall
from .errors import BudgetLabError, DomainError, UsageError
from .io import manifest_path, write_envelope, write_frame, write_jsonl, write_manifest
from .linalg import DimensionProfile
from .resources.measures import negativity, resource_report
from .resources.profiles import PROFILE_TARGETS, max_profile
from .schemas import BudgetRecord, RunManifest
from .states.ensembles import FAMILIES, sample_family
from .states.library import builtin_names, parse_state_spec
from .verification import SUITES, run_suite

LOGGER = logging.getLogger(__name__)

ENVELOPE_TIERS = ("c", "qc:<m>", "wall", "chsh", "frustrated", "separability", "pure-line")
TRAJECTORY_KINDS = ("sequential", "purify")


class _Parser(argparse.ArgumentParser):
    """Raise :class:`UsageError` instead of exiting with argparse's status 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _parse_floats(text: str, name: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse {name} '{text}'") from exc


def _dims(text: Optional[str], default: Optional[str] = None) -> Optional[DimensionProfile]:
    if text is None and default is None:
        return None
    return DimensionProfile.of(text if text is not None else default)


def _stem(*parts: object) -> str:
    return "-".join(str(p) for p in parts if p not in (None, "")).replace(":", "-").replace("/", "-")


def _emit_table(frame: pd.DataFrame, args: argparse.Namespace, config: AppConfig, stem: str, kind: str, manifest: RunManifest) -> Path:
    directory = Path(args.out or config.output.directory)
    fmt = args.format or config.output.format
    path = write_frame(frame, directory / f"{stem}.{fmt}", kind=kind, fmt=fmt)
    manifest.output_directory = str(directory)
    manifest.format = fmt
    write_manifest(manifest, manifest_path(path))
    print(path)
    return path


def _manifest(args: argparse.Namespace, config: AppConfig, dims: Optional[DimensionProfile], **grid) -> RunManifest:
    return RunManifest(
        command=args.command,
        dims=list(dims.dims) if dims is not None else None,
        seed=config.sampling.seed,
        grid=grid,
        package_version=__version__,
    )


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


# ---- commands


def cmd_locate(args: argparse.Namespace, config: AppConfig) -> int:
    dims = _dims(args.dims)
    rho = parse_state_spec(args.state, dims)
    point = budget_decompose(rho, config.tolerances)
    record = BudgetRecord.from_point(point, rho.dims, label=args.state)
    payload = record.model_dump()
    if args.resources:
        payload["resources"] = resource_report(rho, config).model_dump()
    if args.regions:
        payload["regions"] = classify(point, rho.dims, config).model_dump()
    _print_json(payload)
    return 0


def cmd_sample(args: argparse.Namespace, config: AppConfig) -> int:
    dims = _dims(args.dims, "2,2")
    count = args.count or config.sampling.count
    rows = []
    for rho in sample_family(args.family, dims, count, config):
        row = BudgetRecord.from_point(budget_decompose(rho, config.tolerances), dims, family=args.family).model_dump()
        row["dims"] = str(dims)
        if dims.n > 1:
            row["negativity"] = negativity(rho, 0)
        rows.append(row)
    frame = pd.DataFrame(rows)
    manifest = _manifest(args, config, dims, family=args.family, count=count)
    _emit_table(frame, args, config, _stem("sample", args.family, dims), "points", manifest)
    return 0


def _envelope_curve(tier: str, dims: DimensionProfile, config: AppConfig, resolution: int) -> EnvelopeCurve:
    label = tier.strip().lower()
    two_qubits = dims.dims == (2, 2)
    if label in ("c", "qc") or label.startswith("qc:"):
        spec = TierSpec.parse(label, dims)
        if spec.is_classical:
            return classical_envelope_curve_2q() if two_qubits else cn_envelope(dims, config=config)
        return qc_envelope(spec)
    if label == "wall":
        return feasibility_wall(dims)
    if label == "chsh" and two_qubits:
        return chsh_guarantee_curve()
    if label == "frustrated" and dims.dims == (2, 3):
        return frustrated_curve(resolution)
    if label == "separability" and dims.n == 2:
        return separability_curve(dims)
    if label == "pure-line":
        return pure_line(dims)
    supported = ["c", "qc:1..%d" % (dims.n - 1), "wall", "pure-line"]
    if dims.n == 2:
        supported.append("separability")
    if two_qubits:
        supported.append("chsh")
    if dims.dims == (2, 3):
        supported.append("frustrated")
    raise UsageError(f"tier '{tier}' is not available on {dims}; supported: {', '.join(supported)}")


def cmd_envelope(args: argparse.Namespace, config: AppConfig) -> int:
    dims = _dims(args.dims, "2,2")
    if dims.n < 2:
        raise UsageError("envelopes need at least two subsystems")
    try:
        curve = _envelope_curve(args.tier, dims, config, args.resolution)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    if args.plane == "rationalised":
        curve = curve.to_rationalised(dims)
    directory = Path(args.out or config.output.directory)
    stem = _stem("envelope", args.tier, dims, args.plane)
    json_path, csv_path = write_envelope(curve, directory, stem, args.resolution)
    manifest = _manifest(args, config, dims, tier=args.tier, plane=args.plane, resolution=args.resolution)
    manifest.output_directory = str(directory)
    write_manifest(manifest, manifest_path(json_path))
    print(json_path)
    print(csv_path)
    return 0


def cmd_evolve(args: argparse.Namespace, config: AppConfig) -> int:
    rho = parse_state_spec(args.state, _dims(args.dims))
    steps = args.steps or config.trajectories.steps
    spec = args.channel.strip().lower()
    if spec == "purify":
        trajectory = purification_path(rho, max_power=steps, state_label=args.state, config=config)
    elif spec.startswith("sequential"):
        _, _, order = spec.partition(":")
        try:
            subsystems = [int(k) for k in order.split(",")] if order else None
        except ValueError as exc:
            raise UsageError(f"cannot parse depolarisation order '{order}'") from exc
        trajectory = sequential_depolarization(rho, subsystems, steps, state_label=args.state, config=config)
    else:
        kind, target = parse_channel_spec(spec)
        trajectory = sweep(rho, kind, target, steps, state_label=args.state, config=config)
    violations = arrow_check(trajectory, config.tolerances.arrow) if len(trajectory) > 1 else []
    if violations:
        LOGGER.warning("%d simultaneous rises of P and Q along %s", len(violations), trajectory.channel)
    manifest = _manifest(args, config, rho.dims, state=args.state, channel=args.channel, steps=steps)
    _emit_table(trajectory.to_frame(), args, config, _stem("evolve", args.state, args.channel), "trajectory", manifest)
    return 0


def cmd_bounds(args: argparse.Namespace, config: AppConfig) -> int:
    dims = _dims(args.dims, "2,2")
    if args.theta_grid < 1:
        raise UsageError("--theta-grid needs at least one angle")
    thetas = np.linspace(0.0, math.pi / 2.0, args.theta_grid)
    if args.budget:
        config.profiles.budget = args.budget
    profile = max_profile(dims, args.R, thetas, args.target, config=config)
    manifest = _manifest(args, config, dims, target=args.target, R=args.R, theta_grid=args.theta_grid, budget=config.profiles.budget)
    _emit_table(profile.to_frame(), args, config, _stem("bounds", args.target, dims, f"R{args.R:g}"), "profile", manifest)
    return 0


def cmd_classify(args: argparse.Namespace, config: AppConfig) -> int:
    if args.state is not None:
        rho = parse_state_spec(args.state, _dims(args.dims))
        dims = rho.dims
        point = budget_decompose(rho, config.tolerances)
    else:
        if args.P is None or args.marginals is None:
            raise UsageError("classify needs --state or both --P and --marginals")
        dims = _dims(args.dims, "2,2")
        point = budget_from_purities(args.P, _parse_floats(args.marginals, "marginals"), dims, config.tolerances)
    report = classify(point, dims, config)
    _print_json({"point": BudgetRecord.from_point(point, dims).model_dump(), **report.model_dump()})
    return 0


def cmd_verify(args: argparse.Namespace, config: AppConfig) -> int:
    reports = run_suite(args.suite, config)
    for report in reports:
        for check in report.checks:
            print(f"[{'PASS' if check.passed else 'FAIL'}] {report.suite}: {check.name} ({check.detail})")
    if args.out:
        write_jsonl(reports, Path(args.out) / f"{_stem('verify', args.suite)}.jsonl")
    failed = [r.suite for r in reports if not r.passed]
    if failed:
        print(f"budgetlab: verification failed: {', '.join(failed)}", file=sys.stderr)
        return 3
    return 0


# ---- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--dims", help="Comma separated local dimensions in ascending order, e.g. 2,3")
    common.add_argument("--seed", type=int, help="Root random seed (default: config or BUDGETLAB_SEED)")
    common.add_argument("--out", help="Output directory for emitted files")
    common.add_argument("--format", choices=("csv", "jsonl"), help="Tabular output format")
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    common.add_argument("--progress", action="store_true", help="Show progress bars")

    states_help = "Builtin state (" + ", ".join(builtin_names()) + ") or a JSON state file"
    parser = _Parser(
        prog="budgetlab",
        description="Purity-budget geometry of quantum correlations.",
        epilog="channels: " + ", ".join(CHANNEL_KINDS) + "; states: " + ", ".join(builtin_names()),
    )
    parser.add_argument("--version", action="version", version=f"budgetlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    locate = sub.add_parser("locate", parents=[common], help="Budget coordinates of one state")
    locate.add_argument("--state", required=True, help=states_help)
    locate.add_argument("--resources", action="store_true", help="Include the resource report")
    locate.add_argument("--regions", action="store_true", help="Include region flags")
    locate.set_defaults(handler=cmd_locate)

    sample = sub.add_parser("sample", parents=[common], help="Monte Carlo point cloud of one ensemble")
    sample.add_argument("--family", required=True, choices=FAMILIES)
    sample.add_argument("--count", type=int, help="Number of states")
    sample.set_defaults(handler=cmd_sample)

    envelope = sub.add_parser("envelope", parents=[common], help="Boundary curve of the budget geometry")
    envelope.add_argument("--tier", required=True, help="One of " + ", ".join(ENVELOPE_TIERS))
    envelope.add_argument("--plane", choices=("budget", "rationalised"), default="budget")
    envelope.add_argument("--resolution", type=int, default=101, help="Samples per piece in the CSV polyline")
    envelope.set_defaults(handler=cmd_envelope)

    evolve = sub.add_parser("evolve", parents=[common], help="Trajectory of a state under noise or purification")
    evolve.add_argument("--state", required=True, help=states_help)
    evolve.add_argument(
        "--channel",
        required=True,
        help="kind[:targets] with kind in " + ", ".join(CHANNEL_KINDS) + "; or sequential[:order], or purify",
    )
    evolve.add_argument("--steps", type=int, help="Grid points (largest power for purify)")
    evolve.set_defaults(handler=cmd_evolve)

    bounds = sub.add_parser("bounds", parents=[common], help="Maximal-resource profile on a purity shell")
    bounds.add_argument("--target", choices=PROFILE_TARGETS, default="negativity")
    bounds.add_argument("--R", type=float, required=True, help="Squared rationalised radius in (0, 1]")
    bounds.add_argument("--theta-grid", type=int, default=19, help="Number of angles in [0, pi/2]")
    bounds.add_argument("--budget", type=int, help="Seeds per angle")
    bounds.set_defaults(handler=cmd_bounds)

    classify_parser = sub.add_parser("classify", parents=[common], help="Region flags from purities or a state")
    classify_parser.add_argument("--P", type=float, help="Global purity")
    classify_parser.add_argument("--marginals", help="Comma separated marginal purities")
    classify_parser.add_argument("--state", help=states_help)
    classify_parser.set_defaults(handler=cmd_classify)

    verify = sub.add_parser("verify", parents=[common], help="Run acceptance suites")
    verify.add_argument("--suite", default="all", choices=list(SUITES) + ["all"])
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"budgetlab: error: {exc}", file=sys.stderr)
        return exc.exit_code
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format="[%(levelname)s] %(message)s")
    config = load_config()
    if args.seed is not None:
        config.sampling.seed = args.seed
    if args.progress:
        config.sampling.progress = True
    try:
        return args.handler(args, config)
    except BudgetLabError as exc:
        print(f"budgetlab: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["build_parser", "main"]
