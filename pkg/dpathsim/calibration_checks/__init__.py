"""Calibration checks for reference scenarios."""
