"""Shared fixtures."""

from typing import Callable

import numpy as np
import pytest

from dpathsim.model_registry import ModelRegistry
from dpathsim.models.empirical_distribution import EmpiricalDistribution
from dpathsim.models.scenario_config import ScenarioConfig
from dpathsim.models.stage import Platform
from dpathsim.models.stage_delay_model import StageDelayModel

POINT_MASS_MODEL = "point-mass"


def point_mass(value: float, n_samples: int = 1) -> EmpiricalDistribution:
    """A distribution that always yields ``value``."""
    return EmpiricalDistribution(support=(value,), cum_prob=(1.0,), n_samples=n_samples)


@pytest.fixture
def point_mass_model() -> StageDelayModel:
    """Stage point masses cpu=4, lookup=3, upcall=5, stats=2 (miss 14 us, hit 9 us)."""
    return StageDelayModel(
        name=POINT_MASS_MODEL,
        cpu_counters=point_mass(4.0),
        lookup=point_mass(3.0),
        upcall=point_mass(5.0),
        stats_update=point_mass(2.0),
    )


@pytest.fixture
def registry(point_mass_model) -> ModelRegistry:
    """The bundled models plus the point-mass model."""
    reg = ModelRegistry()
    reg.register(POINT_MASS_MODEL, lambda: point_mass_model)
    return reg


@pytest.fixture
def make_config() -> Callable[..., ScenarioConfig]:
    """Build a ScenarioConfig: VOI, 576B at 750 Kb/s, 100 packets, point-mass model."""

    def _make(**overrides) -> ScenarioConfig:
        values = {
            "name": "test",
            "platform": Platform.VOI,
            "ram_gb": 1.0,
            "cpu_cores": 1,
            "packet_size_bytes": 576,
            "data_rate_bps": 750_000,
            "packet_count": 100,
            "seed": 1,
            "model_source": POINT_MASS_MODEL,
        }
        values.update(overrides)
        if "data_rate_bps_lo" in overrides:
            values.pop("data_rate_bps", None)
        return ScenarioConfig(**values)

    return _make


@pytest.fixture
def rng() -> np.random.Generator:
    """A seeded random stream."""
    return np.random.default_rng(12345)
