"""Shared fixtures: a light configuration, seeded generators and common states."""

from __future__ import annotations

import numpy as np
import pytest

from budgetlab.config import AppConfig
from budgetlab.states.ensembles import make_rng
from budgetlab.states.library import parse_state_spec


@pytest.fixture
def config() -> AppConfig:
    config = AppConfig()
    config.sampling.seed = 2024
    config.sampling.count = 50
    config.envelopes.cn_starts = 8
    config.envelopes.classify_grid = 5
    config.envelopes.classify_starts = 4
    config.envelopes.wall_steps = 21
    config.trajectories.steps = 21
    config.trajectories.purification_max_power = 12
    config.profiles.budget = 2
    config.profiles.climb_steps = 5
    config.profiles.projection_steps = 50
    return config


@pytest.fixture
def rng() -> np.random.Generator:
    return make_rng(7, 99)


@pytest.fixture
def bell():
    return parse_state_spec("bell")


@pytest.fixture
def mixed_entangled():
    return parse_state_spec("mixed-entangled")
