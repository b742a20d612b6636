"""Check that the median total delay stays under a ceiling."""

from dpathsim.models.check_category import CheckCategory

from .validation_check import ValidationCheck, ValidationType


def create_check() -> ValidationCheck:
    """Create the total-delay median check.

    Returns:
        ValidationCheck: The configured check.
    """
    return ValidationCheck(
        name="total_median_max_us",
        check_name="TOTAL_MEDIAN_MAX",
        category=CheckCategory.TOTAL_DELAY,
        description="Most packets should be processed in about 25 us or less.",
        metric=lambda report: report.total_summary.median,
        validation_type=ValidationType.MAXIMUM,
        threshold=25,
    )
