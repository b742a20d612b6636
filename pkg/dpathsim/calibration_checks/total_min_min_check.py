"""Check the floor of the total delay."""

from dpathsim.models.check_category import CheckCategory

from .validation_check import ValidationCheck, ValidationType


def create_check() -> ValidationCheck:
    """Create the total-delay minimum check.

    Returns:
        ValidationCheck: The configured check.
    """
    return ValidationCheck(
        name="total_min_min_us",
        check_name="TOTAL_MIN_MIN",
        category=CheckCategory.TOTAL_DELAY,
        description="Even a cache hit should take at least the platform's minimum processing delay.",
        metric=lambda report: report.total_summary.min,
        validation_type=ValidationType.MINIMUM,
        threshold=10,
    )
