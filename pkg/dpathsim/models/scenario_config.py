"""Scenario configuration model."""

from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from dpathsim.models.stage import ArrivalProcess, Platform

DEFAULT_PACKET_COUNT = 10_000
DEFAULT_CACHE_CAPACITY = 8192


class ScenarioConfig(BaseModel):
    """Parameters of one experiment: platform, workload, model and seed."""

    name: str = Field("scenario", min_length=1, description="Scenario identifier, used to label outputs")
    platform: Platform = Field(..., description="VOI or BOI")
    ram_gb: float = Field(..., ge=0.5, le=8.0, description="RAM of the switch host in GB")
    cpu_cores: int = Field(..., ge=1, description="CPU cores of the switch host")
    packet_size_bytes: Union[int, Literal["variable"]] = Field(..., description="Fixed packet size, or 'variable'")
    packet_size_set: Optional[List[int]] = Field(None, description="Sizes drawn from when packet_size_bytes is 'variable'")
    data_rate_bps: Optional[float] = Field(None, description="Fixed data rate in bits/s")
    data_rate_bps_lo: Optional[float] = Field(None, description="Lower bound of a uniform data-rate range in bits/s")
    data_rate_bps_hi: Optional[float] = Field(None, description="Upper bound of a uniform data-rate range in bits/s")
    packet_count: int = Field(DEFAULT_PACKET_COUNT, ge=1)
    seed: int = Field(0, ge=0, lt=2**64)
    model_source: str = Field(..., min_length=1, description="Bundled model name or path to a model file")
    cache_capacity: int = Field(DEFAULT_CACHE_CAPACITY, ge=1)
    eviction: bool = Field(True, description="Evict the least-recently-used flow when the cache is full")
    flow_count: int = Field(1, ge=1, description="Number of distinct (source, destination) flows")
    arrival_process: ArrivalProcess = Field(ArrivalProcess.CBR)

    class Config:
        """Pydantic config."""

        frozen = True
        extra = "forbid"

    @field_validator("packet_size_bytes", mode="before")
    @classmethod
    def _parse_packet_size(cls, value):
        if isinstance(value, str) and value.strip().lower() == "variable":
            return "variable"
        return value

    @field_validator("packet_size_set", mode="before")
    @classmethod
    def _split_size_list(cls, value):
        if isinstance(value, str):
            return [item.strip() for item in value.split(",") if item.strip()]
        return value

    @model_validator(mode="after")
    def _check_consistency(self) -> "ScenarioConfig":
        if self.packet_size_bytes == "variable":
            if not self.packet_size_set:
                raise ValueError("packet_size_set is required when packet_size_bytes is 'variable'")
            if any(size < 1 for size in self.packet_size_set):
                raise ValueError("packet sizes must be at least 1 byte")
        elif self.packet_size_bytes < 1:
            raise ValueError("packet_size_bytes must be at least 1")

        fixed = self.data_rate_bps is not None
        ranged = self.data_rate_bps_lo is not None or self.data_rate_bps_hi is not None
        if fixed == ranged:
            raise ValueError("give either data_rate_bps or both data_rate_bps_lo and data_rate_bps_hi")
        if ranged:
            if self.data_rate_bps_lo is None or self.data_rate_bps_hi is None:
                raise ValueError("data_rate_bps_lo and data_rate_bps_hi must be given together")
            if self.data_rate_bps_lo > self.data_rate_bps_hi:
                raise ValueError("data_rate_bps_lo must not exceed data_rate_bps_hi")
        return self

    @property
    def rate_range(self) -> Tuple[float, float]:
        """The data rate as a (lo, hi) range in bits/s; lo == hi for a fixed rate."""
        if self.data_rate_bps is not None:
            return self.data_rate_bps, self.data_rate_bps
        return self.data_rate_bps_lo, self.data_rate_bps_hi

    @property
    def packet_sizes(self) -> List[int]:
        """The packet sizes the workload draws from."""
        if self.packet_size_bytes == "variable":
            return list(self.packet_size_set)
        return [self.packet_size_bytes]
