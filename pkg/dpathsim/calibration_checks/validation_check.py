"""Validation checks based on rules (simple threshold comparisons)."""

from enum import Enum
from typing import Callable, Optional, Union

from dpathsim.models.check_base_model import CheckBaseModel
from dpathsim.models.check_category import CheckCategory
from dpathsim.models.check_result import CheckResult
from dpathsim.models.simulation_report import SimulationReport


class ValidationType(Enum):
    """Types of validation checks."""

    MINIMUM = "minimum"  # Value must be >= threshold
    MAXIMUM = "maximum"  # Value must be <= threshold


class ValidationCheck(CheckBaseModel):
    """A check that compares one metric of a report against a threshold."""

    def __init__(
        self,
        name: str,
        check_name: str,
        category: CheckCategory,
        description: str,
        metric: Callable[[SimulationReport], float],
        validation_type: ValidationType,
        threshold: Optional[float] = None,
    ):
        """Initialize a validation check.

        Args:
             name: The rule key
             check_name: The display name
             category: The check category
             description: A human-readable description
             metric: Extracts the measured value from a report
             validation_type: The type of validation to perform
             threshold: The default threshold, used when no rule value is given
        """
        super().__init__(name, check_name, category, description)
        self.metric = metric
        self.validation_type = validation_type
        self.threshold = threshold

    def execute(self, report: SimulationReport, target: str, rule_value: Optional[Union[int, float, bool]] = None, **kwargs) -> CheckResult:
        """Execute the validation check.

        Args:
             report: The report of the scenario under test.
             target: The scenario name.
             rule_value: An override threshold from rules (takes precedence over self.threshold).
             **kwargs: Additional arguments

        Returns:
            CheckResult: Result of the validation check.
        """
        threshold = rule_value if rule_value is not None else self.threshold
        if threshold is None or isinstance(threshold, bool):
            return self._not_required(target)

        try:
            actual_value = self.metric(report)
        except Exception as e:
            return self._create_result(
                target=target,
                passed=False,
                actual_value="ERROR",
                expected_value=self._get_expected_value(threshold),
                message=f"Error executing check: {e}",
            )

        return self._create_result(
            target=target,
            passed=self._validate(actual_value, threshold),
            actual_value=f"{actual_value:.3f}",
            expected_value=self._get_expected_value(threshold),
        )

    def _validate(self, actual: float, threshold: float) -> bool:
        """Validate actual value against threshold.

        Args:
            actual: The measured value.
            threshold: The threshold value.

        Returns:
            bool: True if valid, False otherwise.
        """
        if self.validation_type == ValidationType.MINIMUM:
            return actual >= threshold
        if self.validation_type == ValidationType.MAXIMUM:
            return actual <= threshold
        return False

    def _get_expected_value(self, threshold: float) -> str:
        """Get a human-readable expected value string.

        Args:
            threshold: The rule threshold.

        Returns:
            str: A human-readable expected value.
        """
        if self.validation_type == ValidationType.MINIMUM:
            return f">= {threshold}"
        return f"<= {threshold}"
