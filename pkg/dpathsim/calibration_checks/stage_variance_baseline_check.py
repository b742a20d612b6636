"""Check that every stage varies less than in a baseline scenario."""

from typing import Optional

from dpathsim.empirical import summarize
from dpathsim.models.check_base_model import CheckBaseModel
from dpathsim.models.check_category import CheckCategory
from dpathsim.models.check_result import CheckResult
from dpathsim.models.simulation_report import SimulationReport
from dpathsim.models.stage import Stage
from dpathsim.models.stage_delay_model import StageDelayModel


class StageVarianceBaselineCheck(CheckBaseModel):
    """Check that each stage variance is strictly below the baseline scenario's."""

    def __init__(self) -> None:
        """Initialize the stage variance baseline check."""
        super().__init__(
            name="stage_variance_baseline",
            check_name="STAGE_VARIANCE_BASELINE",
            category=CheckCategory.PLATFORM_COMPARISON,
            description="Bare-metal stage delays should be more consistent than the virtualized baseline.",
        )

    def execute(
        self,
        report: SimulationReport,
        target: str,
        rule_value=None,
        model: Optional[StageDelayModel] = None,
        baseline: Optional[StageDelayModel] = None,
        **kwargs,
    ) -> CheckResult:
        """Execute the stage variance baseline check.

        Args:
            report: The report of the scenario under test.
            target: The scenario name.
            rule_value: The baseline scenario name, or None to skip.
            model: The StageDelayModel the scenario ran with.
            baseline: The StageDelayModel of the baseline scenario.
            **kwargs: Additional arguments (unused).

        Returns:
            CheckResult: Result of the check.
        """
        if not rule_value:
            return self._not_required(target)
        expected = f"every stage variance < {rule_value}"
        if model is None or baseline is None:
            return self._create_result(
                target=target,
                passed=False,
                actual_value="ERROR",
                expected_value=expected,
                message=f"No stage model available for {target} or {rule_value}",
            )

        worse = []
        for stage in Stage:
            variance = summarize(model.for_stage(stage)).variance
            baseline_variance = summarize(baseline.for_stage(stage)).variance
            if not variance < baseline_variance:
                worse.append(f"{stage.value} ({variance:.3f} >= {baseline_variance:.3f})")

        if worse:
            return self._create_result(
                target=target,
                passed=False,
                actual_value=f"{len(worse)} stage(s) not below baseline",
                expected_value=expected,
                message="Not below baseline: " + ", ".join(worse),
            )
        return self._create_result(
            target=target,
            passed=True,
            actual_value="All 4 stages below baseline",
            expected_value=expected,
        )
