"""Per-stage delay model."""

from typing import Dict, Optional

from pydantic import BaseModel, Field, field_validator

from dpathsim.models.empirical_distribution import EmpiricalDistribution
from dpathsim.models.stage import Platform, Stage


class StageDelayModel(BaseModel):
    """Four empirical distributions, one per datapath stage."""

    name: str = Field(..., min_length=1, description="Model identifier, e.g. voi-576b-750kbps")
    platform: Optional[Platform] = Field(None, description="The platform the model describes, if known")
    synthetic: bool = Field(False, description="Whether the samples were synthesized rather than measured")
    description: str = Field("", description="Free-text provenance note (single line)")
    cpu_counters: EmpiricalDistribution
    lookup: EmpiricalDistribution
    upcall: EmpiricalDistribution
    stats_update: EmpiricalDistribution

    class Config:
        """Pydantic config."""

        frozen = True
        extra = "forbid"

    @field_validator("name", "description")
    @classmethod
    def _single_line(cls, value: str) -> str:
        if value and value.splitlines() != [value]:
            raise ValueError("must be a single line")
        return value

    def for_stage(self, stage: Stage) -> EmpiricalDistribution:
        """Get the distribution charged for a stage.

        Args:
            stage: The datapath stage.

        Returns:
            EmpiricalDistribution: The stage's distribution.
        """
        return getattr(self, stage.value)

    def stages(self) -> Dict[Stage, EmpiricalDistribution]:
        """Get all four distributions keyed by stage, in charging order.

        Returns:
            Dict[Stage, EmpiricalDistribution]: The stage distributions.
        """
        return {stage: self.for_stage(stage) for stage in Stage}
