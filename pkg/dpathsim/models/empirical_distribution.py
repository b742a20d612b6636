"""Empirical distribution models."""

import math
from typing import Tuple

from pydantic import BaseModel, Field, model_validator


class EmpiricalDistribution(BaseModel):
    """A right-continuous step ECDF over observed delay values (microseconds).

    Immutable once built; share it freely between readers.
    """

    support: Tuple[float, ...] = Field(..., description="Distinct delay values in microseconds, strictly increasing")
    cum_prob: Tuple[float, ...] = Field(..., description="Cumulative probability at each support value")
    n_samples: int = Field(..., ge=1, description="Number of samples the distribution was built from")

    class Config:
        """Pydantic config."""

        frozen = True
        extra = "forbid"

    @model_validator(mode="after")
    def _check_invariants(self) -> "EmpiricalDistribution":
        if not self.support:
            raise ValueError("support must not be empty")
        if len(self.support) != len(self.cum_prob):
            raise ValueError(f"support has {len(self.support)} points but cum_prob has {len(self.cum_prob)}")
        if len(self.support) > self.n_samples:
            raise ValueError("more distinct values than samples")

        previous_value = -math.inf
        previous_prob = 0.0
        for value, prob in zip(self.support, self.cum_prob):
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"support value {value!r} is not a finite non-negative delay")
            if value <= previous_value:
                raise ValueError("support must be strictly increasing")
            if not previous_prob < prob <= 1.0:
                raise ValueError("cum_prob must be strictly increasing within (0, 1]")
            previous_value, previous_prob = value, prob

        if self.cum_prob[-1] != 1.0:
            raise ValueError(f"final cumulative probability must be exactly 1, got {self.cum_prob[-1]!r}")
        return self

    @property
    def minimum(self) -> float:
        """Smallest observed value."""
        return self.support[0]

    @property
    def maximum(self) -> float:
        """Largest observed value."""
        return self.support[-1]


class DistributionSummary(BaseModel):
    """Scalar summary of an empirical distribution (microseconds)."""

    min: float
    max: float
    mean: float
    median: float
    p95: float
    p99: float
    variance: float = Field(..., ge=0.0)
    n: int = Field(..., ge=1)

    class Config:
        """Pydantic config."""

        frozen = True

    @model_validator(mode="after")
    def _check_ordering(self) -> "DistributionSummary":
        if not self.min <= self.median <= self.max:
            raise ValueError("median must lie within [min, max]")
        if not self.min <= self.mean <= self.max:
            raise ValueError("mean must lie within [min, max]")
        if not self.median <= self.p95 <= self.p99 <= self.max:
            raise ValueError("quantiles must increase with probability level")
        return self
