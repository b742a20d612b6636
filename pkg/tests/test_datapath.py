"""Tests for the flow cache and the datapath stages."""

import numpy as np
import pytest

from dpathsim.datapath import Datapath, FlowCache, install, lookup, process_packet, update_stats
from dpathsim.exceptions import AlreadyInstalledError, CacheFullError, MissingFlowError
from dpathsim.models.flow import FlowKey


def key(source: int, size: int = 64) -> FlowKey:
    return FlowKey(source_id=source, destination_id=source + 1000, size_class=size)


@pytest.mark.unit
class TestFlowCache:
    """Flow cache operations."""

    def test_empty_cache_misses(self):
        assert lookup(FlowCache(), key(1)) is False

    def test_install_then_hit(self):
        cache = install(FlowCache(), key(1))
        assert lookup(cache, key(1)) is True
        assert cache.stats(key(1)).packets == 0

    def test_install_twice(self):
        cache = install(FlowCache(), key(1))
        with pytest.raises(AlreadyInstalledError) as exc:
            install(cache, key(1))
        assert exc.value.key == key(1)

    def test_update_stats_counts(self):
        cache = install(FlowCache(), key(1))
        update_stats(cache, key(1), 64, 10.0)
        update_stats(cache, key(1), 128, 25.5)
        stats = cache.stats(key(1))
        assert (stats.packets, stats.bytes, stats.last_used) == (2, 192, 25.5)

    def test_update_stats_missing_flow(self):
        with pytest.raises(MissingFlowError) as exc:
            update_stats(FlowCache(), key(9), 64, 0.0)
        assert exc.value.code == "missing-flow"
        assert isinstance(exc.value, LookupError)

    def test_full_without_eviction(self):
        cache = FlowCache(capacity=1, eviction=False)
        install(cache, key(1))
        with pytest.raises(CacheFullError) as exc:
            install(cache, key(2))
        assert exc.value.capacity == 1
        assert list(cache) == [key(1)]

    def test_lookup_does_not_refresh_recency(self):
        cache = FlowCache(capacity=2)
        install(cache, key(1))
        install(cache, key(2))
        lookup(cache, key(1))
        install(cache, key(3))
        assert key(1) not in cache
        assert list(cache) == [key(2), key(3)]

    def test_update_refreshes_recency(self):
        cache = FlowCache(capacity=2)
        install(cache, key(1))
        install(cache, key(2))
        update_stats(cache, key(1), 64, 1.0)
        install(cache, key(3))
        assert key(2) not in cache
        assert list(cache) == [key(1), key(3)]

    def test_matches_lru_shadow(self, rng):
        capacity = 5
        cache = FlowCache(capacity=capacity)
        shadow = []  # least recently used first
        for step in range(5000):
            flow = key(int(rng.integers(12)))
            assert lookup(cache, flow) == (flow in shadow)
            if flow not in shadow:
                install(cache, flow)
                if len(shadow) == capacity:
                    shadow.pop(0)
            else:
                shadow.remove(flow)
            shadow.append(flow)
            update_stats(cache, flow, 64, float(step))
            assert list(cache) == shadow
            assert len(cache) <= capacity

    def test_invalid_capacity(self):
        with pytest.raises(ValueError):
            FlowCache(capacity=0)

    def test_snapshot_is_a_copy(self):
        cache = install(FlowCache(), key(1))
        snapshot = cache.snapshot()
        snapshot[key(1)].packets = 99
        assert cache.stats(key(1)).packets == 0


@pytest.mark.unit
class TestProcessPacket:
    """The four stages of one packet."""

    def test_miss_then_hit(self, point_mass_model, rng):
        cache = FlowCache()
        first, cache = process_packet(cache, key(1, 576), point_mass_model, rng, arrival=0.0)
        assert first.cache_hit is False
        assert (first.cpu_counters, first.lookup, first.upcall, first.stats_update) == (4.0, 3.0, 5.0, 2.0)
        assert first.total_delay == 14.0
        assert first.departure_time == 14.0
        assert first.size_bytes == 576

        second, cache = process_packet(cache, key(1, 576), point_mass_model, rng, arrival=6144.0, packet_id=1)
        assert second.cache_hit is True
        assert second.upcall == 0.0
        assert second.total_delay == 9.0
        assert second.departure_time == 6153.0
        stats = cache.stats(key(1, 576))
        assert (stats.packets, stats.bytes, stats.last_used) == (2, 1152, 6153.0)

    def test_wait_is_kept_apart(self, point_mass_model, rng):
        record, _ = process_packet(FlowCache(), key(1), point_mass_model, rng, arrival=2.0, start=10.0)
        assert record.wait == 8.0
        assert record.total_delay == 14.0
        assert record.departure_time == 24.0

    def test_rejects_negative_arrival(self, point_mass_model, rng):
        with pytest.raises(ValueError):
            process_packet(FlowCache(), key(1), point_mass_model, rng, arrival=-1.0)

    def test_rejects_start_before_arrival(self, point_mass_model, rng):
        with pytest.raises(ValueError):
            process_packet(FlowCache(), key(1), point_mass_model, rng, arrival=5.0, start=4.0)

    def test_full_cache_without_eviction(self, point_mass_model, rng):
        cache = install(FlowCache(capacity=1, eviction=False), key(1))
        with pytest.raises(CacheFullError):
            process_packet(cache, key(2), point_mass_model, rng, arrival=0.0)

    def test_full_cache_draws_nothing(self, point_mass_model):
        rng = np.random.default_rng(5)
        cache = install(FlowCache(capacity=1, eviction=False), key(1))
        state = rng.bit_generator.state
        with pytest.raises(CacheFullError):
            process_packet(cache, key(2), point_mass_model, rng, arrival=0.0)
        assert rng.bit_generator.state == state


@pytest.mark.unit
class TestDatapath:
    """Single-server processing."""

    def test_back_to_back_packets_queue(self, point_mass_model, rng):
        datapath = Datapath(point_mass_model, rng)
        first = datapath.handle(0.0, key(1), 64)
        second = datapath.handle(1.0, key(1), 64)
        assert first.wait == 0.0
        assert second.wait == 13.0
        assert second.total_delay == 9.0
        assert second.departure_time == 23.0
        assert (first.packet_id, second.packet_id) == (0, 1)
        assert datapath.processed == 2

    def test_packet_conservation_with_eviction(self, point_mass_model):
        rng = np.random.default_rng(3)
        cache = FlowCache(capacity=4)
        datapath = Datapath(point_mass_model, rng, cache)
        misses = 0
        for step in range(2000):
            record = datapath.handle(step * 100.0, key(int(rng.integers(10))), 64)
            misses += not record.cache_hit
            assert record.cache_hit == (record.upcall == 0.0)
        assert cache.installed_packets + cache.evicted_packets == 2000
        assert misses == cache.evictions + len(cache)
