"""CLI command result model."""

from enum import IntEnum
from typing import List

from pydantic import BaseModel, Field


class ExitCode(IntEnum):
    """Process exit codes."""

    SUCCESS = 0
    USAGE_ERROR = 1
    DATA_ERROR = 2


class CommandResult(BaseModel):
    """Outcome of one CLI command."""

    exit_code: ExitCode = ExitCode.SUCCESS
    summary: str = Field("", description="Human-readable text printed to standard output")
    outputs: List[str] = Field(default_factory=list, description="Files the command wrote")
