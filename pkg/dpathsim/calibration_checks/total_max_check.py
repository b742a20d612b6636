"""Check that no packet's total delay exceeds a ceiling."""

from dpathsim.models.check_category import CheckCategory

from .validation_check import ValidationCheck, ValidationType


def create_check() -> ValidationCheck:
    """Create the total-delay maximum check.

    Returns:
        ValidationCheck: The configured check.
    """
    return ValidationCheck(
        name="total_max_us",
        check_name="TOTAL_MAX",
        category=CheckCategory.TOTAL_DELAY,
        description="The maximum processing delay of any packet must not exceed the platform ceiling.",
        metric=lambda report: report.total_summary.max,
        validation_type=ValidationType.MAXIMUM,
        threshold=40,
    )
