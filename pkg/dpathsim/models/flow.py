"""Flow identity and per-flow statistics."""

from pydantic import BaseModel, Field


class FlowKey(BaseModel):
    """Identifies a flow: a stand-in for the packet 5-tuple."""

    source_id: int = Field(..., ge=0)
    destination_id: int = Field(..., ge=0)
    size_class: int = Field(..., ge=1, description="Packet size in bytes")

    class Config:
        """Pydantic config."""

        frozen = True

    def __str__(self) -> str:
        """Render as ``src->dst/size``."""
        return f"{self.source_id}->{self.destination_id}/{self.size_class}B"


class FlowStats(BaseModel):
    """Statistics the datapath keeps for an installed flow."""

    packets: int = Field(0, ge=0)
    bytes: int = Field(0, ge=0)
    last_used: float = Field(0.0, ge=0.0, description="Microseconds since simulation start")

    class Config:
        """Pydantic config."""

        validate_assignment = True
