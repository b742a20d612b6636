"""Synthesis of labeled-synthetic reference stage models.

Each stage is a bounded mixture: a Beta-shaped body on ``[lo, body_hi]``
plus an optional uniform tail on ``[tail_lo, hi]`` for packets that wait
for the CPU. Every sample lies in ``[lo, hi]``, so a model's worst-case
total delay is the sum of its stage ``hi`` values.
"""

import zlib
from typing import Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field, model_validator

from dpathsim.empirical import build_ecdf
from dpathsim.models.empirical_distribution import EmpiricalDistribution
from dpathsim.models.stage import Platform, Stage
from dpathsim.models.stage_delay_model import StageDelayModel

REFERENCE_SAMPLES = 10_000


class StageProfile(BaseModel):
    """Shape of one synthetic stage delay distribution (microseconds)."""

    lo: float = Field(..., ge=0.0)
    body_hi: float
    hi: float
    shape_a: float = Field(..., gt=0.0)
    shape_b: float = Field(5.0, gt=0.0)
    tail_prob: float = Field(0.0, ge=0.0, lt=1.0)
    tail_lo: Optional[float] = None

    class Config:
        """Pydantic config."""

        frozen = True

    @model_validator(mode="after")
    def _check_bounds(self) -> "StageProfile":
        if not self.lo < self.body_hi <= self.hi:
            raise ValueError("need lo < body_hi <= hi")
        if self.tail_prob > 0 and (self.tail_lo is None or not self.lo <= self.tail_lo < self.hi):
            raise ValueError("a tail needs lo <= tail_lo < hi")
        return self

    def with_shape(self, shape_a: float, tail_prob: Optional[float] = None) -> "StageProfile":
        """Copy with a different body shape (and optionally tail weight).

        Returns:
            StageProfile: The adjusted profile.
        """
        update = {"shape_a": shape_a}
        if tail_prob is not None:
            update["tail_prob"] = tail_prob
        return self.model_copy(update=update)


class ReferenceModelSpec(BaseModel):
    """Recipe for one synthetic reference model."""

    name: str
    platform: Platform
    description: str
    samples: int = Field(REFERENCE_SAMPLES, ge=1)
    cpu_counters: StageProfile
    lookup: StageProfile
    upcall: StageProfile
    stats_update: StageProfile

    class Config:
        """Pydantic config."""

        frozen = True

    @property
    def worst_case_total(self) -> float:
        """Largest total delay any packet can be charged."""
        return sum(getattr(self, stage.value).hi for stage in Stage)


def synthesize_stage(profile: StageProfile, rng: np.random.Generator, size: int) -> EmpiricalDistribution:
    """Draw a synthetic stage sample and build its ECDF.

    Args:
        profile: The stage shape.
        rng: Random stream.
        size: Number of samples.

    Returns:
        EmpiricalDistribution: The stage distribution.
    """
    body = profile.lo + (profile.body_hi - profile.lo) * rng.beta(profile.shape_a, profile.shape_b, size)
    values = body
    if profile.tail_prob > 0:
        in_tail = rng.random(size) < profile.tail_prob
        values = np.where(in_tail, rng.uniform(profile.tail_lo, profile.hi, size), body)
    return build_ecdf(np.clip(values, profile.lo, profile.hi))


def synthesize_model(spec: ReferenceModelSpec) -> StageDelayModel:
    """Build a reference model; the same spec always yields the same model.

    Args:
        spec: The recipe.

    Returns:
        StageDelayModel: The synthetic model.
    """
    seed = zlib.crc32(spec.name.encode("utf-8"))
    streams = [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(len(Stage))]
    stages = {stage.value: synthesize_stage(getattr(spec, stage.value), rng, spec.samples) for stage, rng in zip(Stage, streams)}
    logger.debug(f"[MODEL] Synthesized {spec.name} ({spec.samples} samples per stage, worst case {spec.worst_case_total} us)")
    return StageDelayModel(
        name=spec.name,
        platform=spec.platform,
        synthetic=True,
        description=f"SYNTHETIC: {spec.description}",
        **stages,
    )
