"""Calibration check category definitions."""

from enum import Enum


class CheckCategory(str, Enum):
    """Categories for calibration checks."""

    TOTAL_DELAY = "Total Delay"
    STAGE_BREAKDOWN = "Stage Breakdown"
    PLATFORM_COMPARISON = "Platform Comparison"
