"""Delay trace models."""

from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator


class TraceRow(BaseModel):
    """One measured sample: its index and delay in microseconds."""

    sample_index: int
    delay: float = Field(..., ge=0.0, allow_inf_nan=False)

    class Config:
        """Pydantic config."""

        frozen = True


class TraceFile(BaseModel):
    """A single stage's delay series as read from a two-column table."""

    rows: List[TraceRow]
    stage: Optional[str] = Field(None, description="Stage label from the file metadata, if any")
    platform: Optional[str] = Field(None, description="Platform label from the file metadata, if any")
    scenario: Optional[str] = Field(None, description="Scenario label from the file metadata, if any")

    class Config:
        """Pydantic config."""

        frozen = True

    @field_validator("stage", "platform", "scenario")
    @classmethod
    def _plain_label(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and (not value or value != value.strip() or value.splitlines() != [value]):
            raise ValueError("labels must be non-empty single lines without surrounding whitespace")
        return value

    @model_validator(mode="after")
    def _check_order(self) -> "TraceFile":
        for previous, current in zip(self.rows, self.rows[1:]):
            if current.sample_index <= previous.sample_index:
                raise ValueError("sample_index must be strictly increasing")
        return self

    @property
    def delays(self) -> List[float]:
        """The delay column."""
        return [row.delay for row in self.rows]
