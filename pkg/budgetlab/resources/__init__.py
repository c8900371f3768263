"""Resource measures, their kinematic bounds and maximal-resource profiles."""

from .measures import (
    chsh_flags,
    chsh_max,
    discord_bounds,
    geometric_discord_2q,
    magic_bounds,
    magic_renyi2,
    morelli_check,
    negativity,
    negativity_ceiling,
    resource_report,
    steering_ls3,
)
from .profiles import Profile, max_profile

__all__ = [
    "Profile",
    "chsh_flags",
    "chsh_max",
    "discord_bounds",
    "geometric_discord_2q",
    "magic_bounds",
    "magic_renyi2",
    "max_profile",
    "morelli_check",
    "negativity",
    "negativity_ceiling",
    "resource_report",
    "steering_ls3",
]
