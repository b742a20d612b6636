"""Scenario runs and comparisons."""

from typing import List, Optional

import numpy as np
from loguru import logger

from dpathsim.datapath import Datapath, FlowCache
from dpathsim.empirical import build_ecdf, ks_distance, summarize
from dpathsim.model_registry import ModelRegistry, model_reg
from dpathsim.models.packet_record import PacketRecord
from dpathsim.models.scenario_config import ScenarioConfig
from dpathsim.models.simulation_report import TOTAL, MetricComparison, ScenarioComparison, SimulationReport
from dpathsim.models.stage import Stage
from dpathsim.traffic import generate_arrivals


def run_simulation(config: ScenarioConfig, registry: Optional[ModelRegistry] = None) -> SimulationReport:
    """Simulate one scenario.

    The arrival process and the stage delays draw from two independent
    streams spawned from ``config.seed``, so a run is fully determined by
    its configuration.

    Args:
        config: The scenario.
        registry: Where model_source names are looked up; the global registry if None.

    Returns:
        SimulationReport: Records, per-stage and total ECDFs, and summaries.

    Raises:
        UnknownModelError: If model_source cannot be resolved.
    """
    if registry is None:
        registry = model_reg
    model = registry.resolve(config.model_source)
    arrival_stream, delay_stream = (np.random.default_rng(child) for child in np.random.SeedSequence(config.seed).spawn(2))

    logger.debug(f"[SIM] Running {config.name}: {config.packet_count} packets, model {model.name}, seed {config.seed}")
    arrivals = generate_arrivals(config, arrival_stream)
    datapath = Datapath(model, delay_stream, FlowCache(config.cache_capacity, config.eviction))
    records = [datapath.handle(arrival.time_us, arrival.key, arrival.size_bytes) for arrival in arrivals]

    report = report_from_records(config, records)
    logger.info(f"[SIM] {config.name}: {report.misses} miss(es), {report.hits} hit(s), max total {report.total_summary.max:.3f} us")
    return report


def report_from_records(config: ScenarioConfig, records: List[PacketRecord]) -> SimulationReport:
    """Derive a report from packet records.

    Args:
        config: The scenario the records came from.
        records: One record per packet.

    Returns:
        SimulationReport: The report; its distributions are exactly the
        ECDFs of the corresponding record fields.
    """
    stage_distributions = {stage: build_ecdf([getattr(record, stage.value) for record in records]) for stage in Stage}
    total_distribution = build_ecdf([record.total_delay for record in records])
    wait_distribution = build_ecdf([record.wait for record in records])
    hits = sum(1 for record in records if record.cache_hit)

    return SimulationReport(
        config=config,
        records=records,
        stage_distributions=stage_distributions,
        total_distribution=total_distribution,
        stage_summaries={stage: summarize(dist) for stage, dist in stage_distributions.items()},
        total_summary=summarize(total_distribution),
        wait_summary=summarize(wait_distribution),
        hits=hits,
        misses=len(records) - hits,
    )


def compare_scenarios(a: SimulationReport, b: SimulationReport) -> ScenarioComparison:
    """Compare two reports stage by stage and on the total.

    Args:
        a: The reference report.
        b: The report compared against it.

    Returns:
        ScenarioComparison: KS distance and summary deltas (b - a) per metric.
    """
    pairs = [(stage.value, a.stage_distributions[stage], b.stage_distributions[stage], a.stage_summaries[stage], b.stage_summaries[stage]) for stage in Stage]
    pairs.append((TOTAL, a.total_distribution, b.total_distribution, a.total_summary, b.total_summary))

    rows = []
    for metric, dist_a, dist_b, summary_a, summary_b in pairs:
        rows.append(
            MetricComparison(
                metric=metric,
                ks_distance=ks_distance(dist_a, dist_b),
                delta_min=summary_b.min - summary_a.min,
                delta_max=summary_b.max - summary_a.max,
                delta_mean=summary_b.mean - summary_a.mean,
                delta_median=summary_b.median - summary_a.median,
                delta_p95=summary_b.p95 - summary_a.p95,
                delta_p99=summary_b.p99 - summary_a.p99,
            )
        )
    return ScenarioComparison(scenario_a=a.config.name, scenario_b=b.config.name, rows=rows)
