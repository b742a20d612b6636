"""Simulated packet records."""

from pydantic import BaseModel, Field, model_validator

from dpathsim.models.flow import FlowKey


class PacketRecord(BaseModel):
    """One simulated packet: when it arrived, what it hit, and what each stage cost."""

    packet_id: int = Field(..., ge=0)
    arrival_time: float = Field(..., ge=0.0, description="Microseconds since simulation start")
    flow: FlowKey
    size_bytes: int = Field(..., ge=1)
    cache_hit: bool
    cpu_counters: float = Field(..., ge=0.0)
    lookup: float = Field(..., ge=0.0)
    upcall: float = Field(..., ge=0.0)
    stats_update: float = Field(..., ge=0.0)
    total_delay: float = Field(..., ge=0.0, description="Processing delay, excluding queueing wait")
    wait: float = Field(0.0, ge=0.0, description="Time spent queued behind earlier packets")
    departure_time: float = Field(..., ge=0.0)

    class Config:
        """Pydantic config."""

        frozen = True

    @model_validator(mode="after")
    def _check_invariants(self) -> "PacketRecord":
        if self.total_delay != stage_sum(self.cpu_counters, self.lookup, self.upcall, self.stats_update):
            raise ValueError("total_delay must equal the sum of the four stage delays")
        if self.cache_hit and self.upcall != 0.0:
            raise ValueError("a cache hit never pays an upcall")
        if self.departure_time != self.arrival_time + self.wait + self.total_delay:
            raise ValueError("departure_time must equal arrival_time + wait + total_delay")
        return self


def stage_sum(cpu_counters: float, lookup: float, upcall: float, stats_update: float) -> float:
    """Add stage delays in charging order.

    Returns:
        float: The processing delay.
    """
    return cpu_counters + lookup + upcall + stats_update
