"""Configuration defaults and the seed override."""

import pytest
from pydantic import ValidationError

from budgetlab.config import SEED_ENV_VAR, AppConfig, SamplingSettings, load_config


def test_load_config_defaults(monkeypatch) -> None:
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)
    config = load_config()
    assert config.tolerances.hermitian == 1e-10
    assert config.tolerances.psd == 1e-9
    assert config.sampling.wishart_retry_limit == 10_000
    assert config.envelopes.anchor_restarts == 100
    assert config.trajectories.steps == 101
    assert config.profiles.canonical_fraction == 0.7
    assert config.output.format == "csv"


def test_seed_from_environment(monkeypatch) -> None:
    monkeypatch.setenv(SEED_ENV_VAR, "31337")
    assert load_config().sampling.seed == 31337


def test_malformed_seed_falls_back_to_default(monkeypatch) -> None:
    monkeypatch.setenv(SEED_ENV_VAR, "not-a-number")
    assert load_config().sampling.seed == AppConfig().sampling.seed


def test_settings_reject_out_of_range_values() -> None:
    with pytest.raises(ValidationError):
        SamplingSettings(count=0)
    with pytest.raises(ValidationError):
        AppConfig(output={"format": "xlsx"})
