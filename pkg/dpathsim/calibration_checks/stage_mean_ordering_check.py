"""Check that the CPU-counter stage dominates the per-packet delay."""

from typing import Optional

from dpathsim.empirical import summarize
from dpathsim.models.check_base_model import CheckBaseModel
from dpathsim.models.check_category import CheckCategory
from dpathsim.models.check_result import CheckResult
from dpathsim.models.simulation_report import SimulationReport
from dpathsim.models.stage import Stage
from dpathsim.models.stage_delay_model import StageDelayModel


class StageMeanOrderingCheck(CheckBaseModel):
    """Check that cpu_counters has the largest stage mean and lookup the second largest."""

    def __init__(self) -> None:
        """Initialize the stage mean ordering check."""
        super().__init__(
            name="stage_mean_ordering",
            check_name="STAGE_MEAN_ORDERING",
            category=CheckCategory.STAGE_BREAKDOWN,
            description="Fetching CPU counters should take longest, followed by the flow lookup.",
        )

    def execute(self, report: SimulationReport, target: str, rule_value=None, model: Optional[StageDelayModel] = None, **kwargs) -> CheckResult:
        """Execute the stage mean ordering check.

        Stage means are taken from the model the scenario ran with, since a
        report's upcall series is zero for every hit.

        Args:
            report: The report of the scenario under test.
            target: The scenario name.
            rule_value: Whether this check is enabled (True/False).
            model: The StageDelayModel the scenario ran with.
            **kwargs: Additional arguments (unused).

        Returns:
            CheckResult: Result of the check.
        """
        if not rule_value:
            return self._not_required(target)
        if model is None:
            return self._create_result(
                target=target,
                passed=False,
                actual_value="ERROR",
                expected_value="cpu_counters > lookup > upcall, stats_update",
                message="No stage model available",
            )

        means = {stage: summarize(model.for_stage(stage)).mean for stage in Stage}
        passed = means[Stage.CPU_COUNTERS] > means[Stage.LOOKUP] > max(means[Stage.UPCALL], means[Stage.STATS_UPDATE])
        ranked = sorted(Stage, key=lambda stage: means[stage], reverse=True)

        return self._create_result(
            target=target,
            passed=passed,
            actual_value=" > ".join(f"{stage.value}({means[stage]:.3f})" for stage in ranked),
            expected_value="cpu_counters > lookup > upcall, stats_update",
        )
