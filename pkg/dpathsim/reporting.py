"""Console tables and the run summary text."""

from pathlib import Path
from typing import Dict, List

from jinja2 import Environment, FileSystemLoader
from tabulate import tabulate

from dpathsim.models.check_category import CheckCategory
from dpathsim.models.check_result import CheckResult
from dpathsim.models.empirical_distribution import DistributionSummary
from dpathsim.models.scenario_config import ScenarioConfig
from dpathsim.models.simulation_report import TOTAL, ScenarioComparison, SimulationReport

SUMMARY_TEMPLATE = "summary.txt.j2"
SUMMARY_HEADERS = ["Metric", "Min", "Median", "Mean", "P95", "P99", "Max", "Variance"]
RULE_WIDTH = 100


# -----------------------------------------------------------------------
# Colors
# -----------------------------------------------------------------------
class Colors:
    """ANSI color codes for terminal output."""

    GREEN = "\033[32m"
    RED = "\033[31m"
    BLUE = "\033[34m"
    RESET = "\033[0m"


def _summary_row(metric: str, summary: DistributionSummary) -> List[str]:
    values = (summary.min, summary.median, summary.mean, summary.p95, summary.p99, summary.max, summary.variance)
    return [metric] + [f"{value:.3f}" for value in values]


def distribution_table(rows: Dict[str, DistributionSummary]) -> str:
    """Format summaries as a table, one row per metric.

    Args:
        rows: Summary per metric name, in display order.

    Returns:
        str: The table.
    """
    table_data = [_summary_row(metric, summary) for metric, summary in rows.items()]
    return tabulate(table_data, headers=SUMMARY_HEADERS, tablefmt="pretty", colalign=("left",) + ("right",) * 7)


def report_table(report: SimulationReport) -> str:
    """Format the per-stage, total and wait summaries of a report."""
    rows = {stage.value: summary for stage, summary in report.stage_summaries.items()}
    rows[TOTAL] = report.total_summary
    rows["wait"] = report.wait_summary
    return distribution_table(rows)


def _describe_rate(config: ScenarioConfig) -> str:
    lo, hi = config.rate_range
    if lo == hi:
        return f"{lo:g} b/s"
    return f"{lo:g}-{hi:g} b/s (uniform)"


def _describe_size(config: ScenarioConfig) -> str:
    if config.packet_size_bytes == "variable":
        return "variable (" + ", ".join(f"{size}B" for size in config.packet_sizes) + ")"
    return f"{config.packet_size_bytes}B"


def render_summary(report: SimulationReport) -> str:
    """Render the run summary text.

    The text carries no timestamps, so identical runs render identically.

    Args:
        report: The report.

    Returns:
        str: The rendered summary.
    """
    jinja_env = Environment(loader=FileSystemLoader(str(Path(__file__).parent / "templates")), keep_trailing_newline=True)
    template = jinja_env.get_template(SUMMARY_TEMPLATE)
    return template.render(
        rule="=" * RULE_WIDTH,
        config=report.config,
        report=report,
        packet_size=_describe_size(report.config),
        data_rate=_describe_rate(report.config),
        delay_table=report_table(report),
    )


def comparison_table(comparison: ScenarioComparison) -> str:
    """Format a scenario comparison as a table.

    Args:
        comparison: The comparison.

    Returns:
        str: The table.
    """
    headers = ["Metric", "KS", "d(min)", "d(median)", "d(mean)", "d(p95)", "d(p99)", "d(max)"]
    table_data = [
        [row.metric, f"{row.ks_distance:.4f}"] + [f"{value:+.3f}" for value in (row.delta_min, row.delta_median, row.delta_mean, row.delta_p95, row.delta_p99, row.delta_max)]
        for row in comparison.rows
    ]
    title = f"{comparison.scenario_b} vs {comparison.scenario_a}"
    return title + "\n" + tabulate(table_data, headers=headers, tablefmt="pretty", colalign=("left",) + ("right",) * 7)


def scenarios_table(configs: Dict[str, ScenarioConfig]) -> str:
    """Format the experiment matrix as a table.

    Args:
        configs: Configuration per scenario name.

    Returns:
        str: The table.
    """
    headers = ["Scenario", "Platform", "RAM (GB)", "Cores", "Packet size", "Data rate", "Packets"]
    table_data = [
        [name, config.platform.value, config.ram_gb, config.cpu_cores, _describe_size(config), _describe_rate(config), config.packet_count]
        for name, config in configs.items()
    ]
    return tabulate(table_data, headers=headers, tablefmt="pretty", colalign=("left", "left", "right", "right", "left", "left", "right"))


def print_results(results: List[CheckResult], summary: Dict[str, Dict[str, int]]) -> None:
    """Print check results with color coding, grouped by category.

    Args:
        results: The check results.
        summary: Passed/failed/total counts per scenario.
    """
    print(f"\n{'=' * RULE_WIDTH}")
    print("Reference Model Calibration Report")
    print(f"{'=' * RULE_WIDTH}")

    categories: Dict[CheckCategory, List[CheckResult]] = {}
    for result in results:
        categories.setdefault(result.category, []).append(result)

    headers = ["Scenario", "Check", "Status", "Actual", "Expected"]

    for category in CheckCategory:
        if category not in categories:
            continue

        print(f"\n{'=' * RULE_WIDTH}")
        print(category.value)
        print(f"{'=' * RULE_WIDTH}")

        table_data = []
        for result in categories[category]:
            status = f"{Colors.GREEN}PASS{Colors.RESET}" if result.passed else f"{Colors.RED}FAIL{Colors.RESET}"
            expected = str(result.expected_value) if result.expected_value else "N/A"
            if result.is_override:
                expected = f"{expected} {Colors.BLUE}(override){Colors.RESET}"
            table_data.append([result.target, result.check_name, status, str(result.actual_value), expected])

        print(tabulate(table_data, headers=headers, tablefmt="pretty", colalign=("left", "left", "center", "left", "left")))

    print("\n" + "=" * RULE_WIDTH)
    print("SUMMARY")
    print("=" * RULE_WIDTH)
    for name, counts in summary.items():
        if counts["failed"] == 0:
            color = Colors.GREEN
            status_text = "CALIBRATED"
        else:
            color = Colors.RED
            status_text = "OUT OF BOUNDS"
        print(f"  {color}{name}: {counts['passed']}/{counts['total']} passed - {status_text}{Colors.RESET}")


def check_results_table(results: List[CheckResult]) -> str:
    """Format check results as a plain table, for files.

    Args:
        results: The check results.

    Returns:
        str: The table.
    """
    headers = ["Scenario", "Check", "Status", "Actual", "Expected", "Message"]
    table_data = [
        [result.target, result.check_name, "PASS" if result.passed else "FAIL", str(result.actual_value), str(result.expected_value), result.message]
        for result in results
    ]
    return tabulate(table_data, headers=headers, tablefmt="pretty", colalign=("left",) * 6)
