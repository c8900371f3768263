"""Kraus channels and trajectories through the budget geometry."""

from .flows import Trajectory, arrow_check, purification_path, purify, sequential_depolarization, sweep
from .kraus import CHANNEL_KINDS, KrausChannel, apply, make_channel, parse_channel_spec

__all__ = [
    "CHANNEL_KINDS",
    "KrausChannel",
    "Trajectory",
    "apply",
    "arrow_check",
    "make_channel",
    "parse_channel_spec",
    "purification_path",
    "purify",
    "sequential_depolarization",
    "sweep",
]
