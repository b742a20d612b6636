"""Data models for dpathsim."""
