"""Kernel datapath model.

Each packet is charged four stages in order: CPU counters, flow lookup,
upcall (only on a cache miss, after which the flow is installed), and the
statistics update. Packets are served one at a time in arrival order, as
on a single-core installation.
"""

from collections import OrderedDict
from typing import Dict, Iterator, Optional, Tuple

import numpy as np
from loguru import logger

from dpathsim.empirical import sample
from dpathsim.exceptions import AlreadyInstalledError, CacheFullError, MissingFlowError
from dpathsim.models.flow import FlowKey, FlowStats
from dpathsim.models.packet_record import PacketRecord, stage_sum
from dpathsim.models.scenario_config import DEFAULT_CACHE_CAPACITY
from dpathsim.models.stage_delay_model import StageDelayModel


class FlowCache:
    """Installed flows with their statistics, evicted least-recently-used first.

    Recency is refreshed by ``install`` and ``update_stats``; ``lookup`` is a
    pure membership query.
    """

    def __init__(self, capacity: int = DEFAULT_CACHE_CAPACITY, eviction: bool = True) -> None:
        """Initialize an empty cache.

        Args:
            capacity: Maximum number of installed flows.
            eviction: Evict the least-recently-used flow when full; if False,
                installing into a full cache raises CacheFullError.
        """
        if capacity < 1:
            raise ValueError(f"cache capacity must be at least 1, got {capacity}")
        self.capacity = capacity
        self.eviction = eviction
        self._entries: "OrderedDict[FlowKey, FlowStats]" = OrderedDict()
        self.evicted_packets = 0
        self.evictions = 0

    def __len__(self) -> int:
        """Number of installed flows."""
        return len(self._entries)

    def __contains__(self, key: FlowKey) -> bool:
        """Whether a flow is installed."""
        return key in self._entries

    def __iter__(self) -> Iterator[FlowKey]:
        """Installed flows, least recently used first."""
        return iter(self._entries)

    def lookup(self, key: FlowKey) -> bool:
        """Check whether a flow is installed.

        Args:
            key: The flow key.

        Returns:
            bool: True on a hit, False on a miss.
        """
        return key in self._entries

    def install(self, key: FlowKey) -> "FlowCache":
        """Install a flow with zeroed statistics.

        Args:
            key: The flow key.

        Returns:
            FlowCache: This cache.

        Raises:
            AlreadyInstalledError: If the flow is already installed.
            CacheFullError: If the cache is full and eviction is disabled.
        """
        if key in self._entries:
            raise AlreadyInstalledError(key)
        if len(self._entries) >= self.capacity:
            if not self.eviction:
                raise CacheFullError(key, self.capacity)
            evicted_key, evicted_stats = self._entries.popitem(last=False)
            self.evicted_packets += evicted_stats.packets
            self.evictions += 1
            logger.debug(f"[CACHE] Evicted {evicted_key} after {evicted_stats.packets} packet(s)")
        self._entries[key] = FlowStats()
        return self

    def update_stats(self, key: FlowKey, size_bytes: int, now: float) -> "FlowCache":
        """Count one packet against an installed flow.

        Args:
            key: The flow key.
            size_bytes: The packet size.
            now: The current time in microseconds.

        Returns:
            FlowCache: This cache.

        Raises:
            MissingFlowError: If the flow is not installed.
        """
        stats = self._entries.get(key)
        if stats is None:
            raise MissingFlowError(key)
        stats.packets += 1
        stats.bytes += size_bytes
        stats.last_used = now
        self._entries.move_to_end(key)
        return self

    def stats(self, key: FlowKey) -> FlowStats:
        """Get a copy of a flow's statistics.

        Args:
            key: The flow key.

        Returns:
            FlowStats: The flow's counters.

        Raises:
            MissingFlowError: If the flow is not installed.
        """
        stats = self._entries.get(key)
        if stats is None:
            raise MissingFlowError(key)
        return stats.model_copy()

    def snapshot(self) -> Dict[FlowKey, FlowStats]:
        """Copy of every installed flow's statistics, least recently used first.

        Returns:
            Dict[FlowKey, FlowStats]: The statistics.
        """
        return {key: stats.model_copy() for key, stats in self._entries.items()}

    @property
    def installed_packets(self) -> int:
        """Packets counted by flows that are still installed."""
        return sum(stats.packets for stats in self._entries.values())


def lookup(cache: FlowCache, key: FlowKey) -> bool:
    """Check whether a flow is installed (no mutation).

    Returns:
        bool: True on a hit.
    """
    return cache.lookup(key)


def install(cache: FlowCache, key: FlowKey) -> FlowCache:
    """Install a flow, evicting the least-recently-used one if the cache is full.

    Returns:
        FlowCache: The updated cache.
    """
    return cache.install(key)


def update_stats(cache: FlowCache, key: FlowKey, size_bytes: int, now: float) -> FlowCache:
    """Count one packet of ``size_bytes`` against an installed flow at time ``now``.

    Returns:
        FlowCache: The updated cache.
    """
    return cache.update_stats(key, size_bytes, now)


def process_packet(
    cache: FlowCache,
    key: FlowKey,
    model: StageDelayModel,
    rng: np.random.Generator,
    arrival: float,
    size_bytes: Optional[int] = None,
    packet_id: int = 0,
    start: Optional[float] = None,
) -> Tuple[PacketRecord, FlowCache]:
    """Run one packet through the four datapath stages.

    Args:
        cache: The flow cache; updated in place.
        key: The packet's flow.
        model: Stage delay distributions.
        rng: Random stream the stage delays are drawn from.
        arrival: Arrival time in microseconds.
        size_bytes: Packet size; defaults to the flow's size class.
        packet_id: Identifier recorded on the packet.
        start: When service begins; defaults to ``arrival`` (no queueing).

    Returns:
        Tuple[PacketRecord, FlowCache]: The packet's record and the updated cache.

    Raises:
        ValueError: If ``arrival`` is negative or service starts before arrival.
        CacheFullError: If the flow misses, the cache is full and eviction is disabled.
    """
    if arrival < 0:
        raise ValueError(f"arrival time must be non-negative, got {arrival}")
    start = arrival if start is None else start
    if start < arrival:
        raise ValueError("service cannot start before the packet arrives")
    size_bytes = key.size_class if size_bytes is None else size_bytes

    # A full cache without eviction fails before any delay is drawn.
    cache_hit = cache.lookup(key)
    if not cache_hit:
        cache.install(key)

    cpu_counters = sample(model.cpu_counters, rng)
    lookup_delay = sample(model.lookup, rng)
    upcall = 0.0 if cache_hit else sample(model.upcall, rng)
    stats_update = sample(model.stats_update, rng)

    total = stage_sum(cpu_counters, lookup_delay, upcall, stats_update)
    wait = start - arrival
    departure = arrival + wait + total
    cache.update_stats(key, size_bytes, departure)

    record = PacketRecord(
        packet_id=packet_id,
        arrival_time=arrival,
        flow=key,
        size_bytes=size_bytes,
        cache_hit=cache_hit,
        cpu_counters=cpu_counters,
        lookup=lookup_delay,
        upcall=upcall,
        stats_update=stats_update,
        total_delay=total,
        wait=wait,
        departure_time=departure,
    )
    return record, cache


class Datapath:
    """Single-server datapath: packets are processed one at a time in arrival order."""

    def __init__(self, model: StageDelayModel, rng: np.random.Generator, cache: Optional[FlowCache] = None) -> None:
        """Initialize the datapath.

        Args:
            model: Stage delay distributions.
            rng: Random stream for stage delays.
            cache: The flow cache; a default-capacity LRU cache if None.
        """
        self.model = model
        self.rng = rng
        self.cache = cache if cache is not None else FlowCache()
        self.busy_until = 0.0
        self.processed = 0

    def handle(self, arrival: float, key: FlowKey, size_bytes: int) -> PacketRecord:
        """Serve one packet, waiting for the previous one to finish if needed.

        Args:
            arrival: Arrival time in microseconds (non-decreasing across calls).
            key: The packet's flow.
            size_bytes: The packet size.

        Returns:
            PacketRecord: The packet's record.
        """
        start = max(arrival, self.busy_until)
        record, _ = process_packet(
            self.cache,
            key,
            self.model,
            self.rng,
            arrival,
            size_bytes=size_bytes,
            packet_id=self.processed,
            start=start,
        )
        self.busy_until = record.departure_time
        self.processed += 1
        return record
