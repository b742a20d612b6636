"""Registry of all available calibration checks."""

from typing import Dict

from dpathsim.calibration_checks import (
    stage_mean_ordering_check,
    stage_variance_baseline_check,
    total_max_check,
    total_median_max_check,
    total_min_min_check,
)

from .models.check_base_model import CheckBaseModel


class CheckRegistry:
    """Central registry of all available checks, keyed by rule name."""

    def __init__(self) -> None:
        """Initialize the check registry with all available checks."""
        self._checks: Dict[str, CheckBaseModel] = {
            # Total Delay Checks
            "total_median_max_us": total_median_max_check.create_check(),
            "total_max_us": total_max_check.create_check(),
            "total_min_min_us": total_min_min_check.create_check(),
            # Stage Breakdown Checks
            "stage_mean_ordering": stage_mean_ordering_check.StageMeanOrderingCheck(),
            # Platform Comparison Checks
            "stage_variance_baseline": stage_variance_baseline_check.StageVarianceBaselineCheck(),
        }

    def get_check(self, check_name: str) -> CheckBaseModel:
        """Get a check by name.

        Args:
            check_name: The name of the check (e.g., "total_max_us").

        Returns:
            CheckBaseModel: The check instance.

        Raises:
            KeyError: If the check is not found.
        """
        if check_name not in self._checks:
            raise KeyError(f"Check '{check_name}' not found in registry")
        return self._checks[check_name]

    def get_all_checks(self) -> Dict[str, CheckBaseModel]:
        """Get all registered checks.

        Returns:
            A dictionary of all checks.
        """
        return self._checks.copy()


# Global registry instance
check_reg = CheckRegistry()
