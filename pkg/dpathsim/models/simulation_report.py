"""Simulation report and scenario comparison models."""

from typing import Dict, List

from pydantic import BaseModel, Field, model_validator

from dpathsim.models.empirical_distribution import DistributionSummary, EmpiricalDistribution
from dpathsim.models.packet_record import PacketRecord
from dpathsim.models.scenario_config import ScenarioConfig
from dpathsim.models.stage import Stage

TOTAL = "total"


class SimulationReport(BaseModel):
    """Everything one simulation run produced."""

    config: ScenarioConfig
    records: List[PacketRecord]
    stage_distributions: Dict[Stage, EmpiricalDistribution]
    total_distribution: EmpiricalDistribution
    stage_summaries: Dict[Stage, DistributionSummary]
    total_summary: DistributionSummary
    wait_summary: DistributionSummary = Field(..., description="Queueing wait, kept apart from processing delay")
    hits: int = Field(..., ge=0)
    misses: int = Field(..., ge=0)

    class Config:
        """Pydantic config."""

        frozen = True

    @model_validator(mode="after")
    def _check_counts(self) -> "SimulationReport":
        if self.hits + self.misses != self.config.packet_count:
            raise ValueError(f"hits ({self.hits}) + misses ({self.misses}) must equal packet_count ({self.config.packet_count})")
        if len(self.records) != self.config.packet_count:
            raise ValueError("one record per packet is required")
        if set(self.stage_distributions) != set(Stage) or set(self.stage_summaries) != set(Stage):
            raise ValueError("all four stages must be reported")
        return self


class MetricComparison(BaseModel):
    """KS distance and summary deltas (b - a) for one stage or the total."""

    metric: str = Field(..., description="A stage name or 'total'")
    ks_distance: float = Field(..., ge=0.0, le=1.0)
    delta_min: float
    delta_max: float
    delta_mean: float
    delta_median: float
    delta_p95: float
    delta_p99: float

    class Config:
        """Pydantic config."""

        frozen = True


class ScenarioComparison(BaseModel):
    """Side-by-side comparison of two simulation reports."""

    scenario_a: str
    scenario_b: str
    rows: List[MetricComparison]

    class Config:
        """Pydantic config."""

        frozen = True

    def row(self, metric: str) -> MetricComparison:
        """Get the comparison row for a stage name or 'total'.

        Args:
            metric: The stage value (e.g. "lookup") or "total".

        Returns:
            MetricComparison: The matching row.

        Raises:
            KeyError: If no row has that metric.
        """
        for row in self.rows:
            if row.metric == metric:
                return row
        raise KeyError(f"No comparison row for '{metric}'")
