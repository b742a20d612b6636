"""Packet arrival workloads.

Constant-bit-rate arrivals: each packet arrives ``size * 8 / rate`` after
the previous one, with the rate redrawn uniformly per packet when the
scenario gives a range. Poisson arrivals use exponential gaps with the
same mean.
"""

import math
from typing import Dict, List, NamedTuple, Tuple

import numpy as np
from loguru import logger

from dpathsim.exceptions import InvalidRateError
from dpathsim.models.flow import FlowKey
from dpathsim.models.scenario_config import ScenarioConfig
from dpathsim.models.stage import ArrivalProcess

MICROSECONDS_PER_SECOND = 1_000_000


class Arrival(NamedTuple):
    """One packet offered to the datapath."""

    time_us: float
    key: FlowKey
    size_bytes: int


def transmission_gap_us(size_bytes: int, rate_bps: float) -> float:
    """Time to emit one packet at a given rate.

    Args:
        size_bytes: The packet size.
        rate_bps: The data rate in bits/s.

    Returns:
        float: The inter-arrival time in microseconds.
    """
    return size_bytes * 8 * MICROSECONDS_PER_SECOND / rate_bps


def flow_key(flow_index: int, flow_count: int, size_bytes: int) -> FlowKey:
    """Flow key of the ``flow_index``-th configured flow for a packet size.

    Returns:
        FlowKey: Source ids are 0..flow_count-1, destinations follow them.
    """
    return FlowKey(source_id=flow_index, destination_id=flow_count + flow_index, size_class=size_bytes)


def generate_arrivals(config: ScenarioConfig, rng: np.random.Generator) -> List[Arrival]:
    """Generate the packet arrivals of a scenario.

    The first packet arrives at time 0; arrival times are strictly increasing.

    Args:
        config: The scenario.
        rng: Random stream for sizes, flows, rates and Poisson gaps.

    Returns:
        List[Arrival]: ``config.packet_count`` arrivals in time order.

    Raises:
        InvalidRateError: If a data rate is zero, negative or not finite.
    """
    lo, hi = config.rate_range
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo <= 0 or hi <= 0:
        raise InvalidRateError(f"data rate must be positive and finite, got [{lo}, {hi}] bits/s")

    sizes = config.packet_sizes
    keys: Dict[Tuple[int, int], FlowKey] = {}
    arrivals: List[Arrival] = []
    now = 0.0

    for index in range(config.packet_count):
        size = sizes[0] if len(sizes) == 1 else sizes[int(rng.integers(len(sizes)))]
        flow = 0 if config.flow_count == 1 else int(rng.integers(config.flow_count))
        rate = lo if lo == hi else float(rng.uniform(lo, hi))

        if index:
            gap = transmission_gap_us(size, rate)
            if config.arrival_process is ArrivalProcess.POISSON:
                mean_gap = gap
                gap = float(rng.exponential(mean_gap))
                while gap <= 0.0:
                    gap = float(rng.exponential(mean_gap))
            now += gap

        key = keys.get((flow, size))
        if key is None:
            key = keys[(flow, size)] = flow_key(flow, config.flow_count, size)
        arrivals.append(Arrival(now, key, size))

    logger.debug(f"[TRAFFIC] Generated {len(arrivals)} {config.arrival_process.value} arrivals over {now:.1f} us for {config.name}")
    return arrivals
