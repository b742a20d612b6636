"""Check result models."""

from typing import Optional, Union

from pydantic import BaseModel, Field

from dpathsim.models.check_category import CheckCategory


class CheckResult(BaseModel):
    """Result of a single calibration check."""

    check_name: str = Field(..., description="The name of the calibration check")
    target: str = Field(..., description="The scenario the check ran against")
    passed: bool = Field(..., description="Whether the check passed")
    actual_value: Union[str, int, float, bool] = Field(..., description="The measured value")
    expected_value: Optional[Union[str, int, float, bool]] = Field(None, description="The expected value")
    message: str = Field("", description="An additional message")
    category: CheckCategory = Field(..., description="The category of the check")
    is_override: bool = Field(
        False,
        description="Whether the expected value came from a scenario-specific override",
    )

    class Config:
        """Pydantic config."""

        extra = "ignore"
