"""Command-line front end.

Subcommands: ``ecdf``, ``models synth|check|build``, ``simulate``,
``compare`` and ``scenarios``. Exit codes: 0 success, 1 usage or
configuration error, 2 data or I/O error. Every output file is staged
in memory and only written once the whole command has succeeded.
"""

import argparse
import os
import sys
import tempfile
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import yaml
from loguru import logger
from pydantic import ValidationError

from dpathsim import __version__
from dpathsim.calibration import CalibrationRunner
from dpathsim.config_loader import CONFIG_SUFFIXES, build_config, load_scenario_config
from dpathsim.empirical import summarize
from dpathsim.exceptions import ConfigError, DpathsimError, InvalidReportError
from dpathsim.model_registry import model_reg
from dpathsim.models.command_result import CommandResult, ExitCode
from dpathsim.models.scenario_config import ScenarioConfig
from dpathsim.models.simulation_report import SimulationReport
from dpathsim.models.stage import Platform, Stage
from dpathsim.reporting import check_results_table, comparison_table, distribution_table, print_results, render_summary, scenarios_table
from dpathsim.scenario_manager import ScenarioManager
from dpathsim.simulator import compare_scenarios, report_from_records, run_simulation
from dpathsim.trace_io import (
    build_model_from_traces,
    export_comparison_csv,
    export_ecdf_csv,
    export_records_csv,
    parse_records_csv,
    parse_trace,
    save_model,
    trace_to_distribution,
)

RUN_CONFIG_FILE = "config.yaml"
RUN_RECORDS_FILE = "records.csv"
RUN_SUMMARY_FILE = "summary.txt"
RUN_TOTAL_ECDF_FILE = "ecdf_total.csv"
MODEL_SUFFIX = ".model"
CALIBRATION_FILE = "calibration.txt"

Outputs = Dict[Path, bytes]


class UsageError(Exception):
    """Raised by the argument parser instead of exiting."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(f"{self.prog}: {message}")


def setup_logging(debug: bool = False) -> None:
    """Send log records to stderr.

    Args:
        debug: Log at DEBUG instead of INFO.
    """
    logger.remove()
    if debug:
        logger.add(sys.stderr, level="DEBUG")
    else:
        logger.add(sys.stderr, level="INFO")


def _sibling(path: Path, suffix: str) -> Path:
    fd, name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=suffix)
    os.close(fd)
    return Path(name)


def _rollback(staged: List[Tuple[Path, Path]], placed: List[Tuple[Path, Optional[Path]]]) -> None:
    for path, backup in reversed(placed):
        if backup is not None:
            os.replace(backup, path)
        else:
            path.unlink(missing_ok=True)
    for tmp_path, _ in staged:
        tmp_path.unlink(missing_ok=True)


def write_outputs(outputs: Outputs) -> List[str]:
    """Write files so that either all of them land or none do.

    Every file is first written to a temporary sibling. Existing files are
    moved aside before the temporary file replaces them, and put back if a
    later replace fails.

    Args:
        outputs: Content per destination path.

    Returns:
        List[str]: The written paths.

    Raises:
        OSError: If any file cannot be staged or moved into place; nothing is left behind.
    """
    for path in outputs:
        if path.is_dir():
            raise IsADirectoryError(f"output path {path} is a directory")

    staged: List[Tuple[Path, Path]] = []
    placed: List[Tuple[Path, Optional[Path]]] = []
    try:
        for path, content in outputs.items():
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp_path = _sibling(path, ".tmp")
            staged.append((tmp_path, path))
            tmp_path.write_bytes(content)

        while staged:
            tmp_path, path = staged[0]
            backup = None
            if path.exists():
                backup = _sibling(path, ".bak")
                try:
                    os.replace(path, backup)
                except OSError:
                    backup.unlink(missing_ok=True)
                    raise
            placed.append((path, backup))
            os.replace(tmp_path, path)
            staged.pop(0)
    except OSError:
        _rollback(staged, placed)
        raise

    for path, backup in placed:
        if backup is not None:
            backup.unlink(missing_ok=True)
        logger.debug(f"[CLI] Wrote {path}")
    return [str(path) for path in outputs]


def _read_bytes(path: str) -> bytes:
    return Path(path).read_bytes()


# -----------------------------------------------------------------------
# Commands
# -----------------------------------------------------------------------
def cmd_ecdf(trace_path: str, out_csv: str) -> CommandResult:
    """Build the ECDF of a trace file and write it as CSV.

    Args:
        trace_path: The two-column trace file.
        out_csv: Where the ECDF CSV goes.

    Returns:
        CommandResult: The summary and written file.
    """
    trace = parse_trace(_read_bytes(trace_path))
    dist = trace_to_distribution(trace)
    outputs = write_outputs({Path(out_csv): export_ecdf_csv(dist)})
    label = trace.stage or Path(trace_path).stem
    summary = f"{len(dist.support)} distinct value(s) from {dist.n_samples} sample(s)\n" + distribution_table({label: summarize(dist)})
    return CommandResult(summary=summary, outputs=outputs)


def cmd_models_synth(out_dir: str) -> CommandResult:
    """Write every bundled reference model plus its calibration table.

    Nothing is written when a calibration check fails.

    Args:
        out_dir: The destination directory.

    Returns:
        CommandResult: The summary and written files.
    """
    runner = CalibrationRunner()
    results = runner.run_all_checks()
    table = check_results_table(results)
    if not runner.all_passed:
        failed = sum(1 for result in results if not result.passed)
        return CommandResult(exit_code=ExitCode.DATA_ERROR, summary=f"{failed} calibration check(s) failed, no models written\n{table}")

    out = Path(out_dir)
    staged: Outputs = {out / f"{name}{MODEL_SUFFIX}": save_model(model) for name, model in model_reg.get_all_models().items()}
    staged[out / CALIBRATION_FILE] = (table + "\n").encode("utf-8")
    outputs = write_outputs(staged)
    return CommandResult(summary=f"{len(staged) - 1} reference model(s) written to {out}\n{table}", outputs=outputs)


def cmd_models_check(scenarios: Optional[List[str]] = None) -> CommandResult:
    """Run the calibration checks and print the colored report.

    Args:
        scenarios: Scenario names to check; all if None.

    Returns:
        CommandResult: Exit 2 when any check fails.
    """
    runner = CalibrationRunner()
    results = runner.run_all_checks(scenarios)
    if not results:
        raise ConfigError(f"no bundled scenario matches {scenarios}")
    print_results(results, runner.get_summary())
    exit_code = ExitCode.SUCCESS if runner.all_passed else ExitCode.DATA_ERROR
    return CommandResult(exit_code=exit_code)


def cmd_models_build(traces: Dict[Stage, str], out_model: str, name: Optional[str] = None, platform: Optional[Platform] = None) -> CommandResult:
    """Build a stage model from one measured trace per stage.

    Args:
        traces: A trace file per stage.
        out_model: Where the model file goes.
        name: The model name; the output file stem if None.
        platform: The platform the traces were measured on.

    Returns:
        CommandResult: The summary and written file.
    """
    parsed = {stage: parse_trace(_read_bytes(path)) for stage, path in traces.items()}
    model = build_model_from_traces(name or Path(out_model).stem, parsed, platform)
    outputs = write_outputs({Path(out_model): save_model(model)})
    summary = distribution_table({stage.value: summarize(model.for_stage(stage)) for stage in Stage})
    return CommandResult(summary=f"Model {model.name}\n{summary}", outputs=outputs)


def _config_files(config_path: Path) -> List[Path]:
    if not config_path.is_dir():
        return [config_path]
    files = sorted(path for path in config_path.iterdir() if path.is_file() and path.suffix.lower() in CONFIG_SUFFIXES)
    if not files:
        raise ConfigError(f"no scenario files in {config_path}")
    return files


def run_outputs(report: SimulationReport, out_dir: Path) -> Outputs:
    """Stage the files of one run directory.

    Args:
        report: The report.
        out_dir: The run directory.

    Returns:
        Outputs: Content per path.
    """
    config_text = yaml.safe_dump(report.config.model_dump(mode="json"), sort_keys=True)
    outputs: Outputs = {
        out_dir / RUN_CONFIG_FILE: config_text.encode("utf-8"),
        out_dir / RUN_RECORDS_FILE: export_records_csv(report.records),
    }
    for stage in Stage:
        outputs[out_dir / f"ecdf_{stage.value}.csv"] = export_ecdf_csv(report.stage_distributions[stage])
    outputs[out_dir / RUN_TOTAL_ECDF_FILE] = export_ecdf_csv(report.total_distribution)
    outputs[out_dir / RUN_SUMMARY_FILE] = render_summary(report).encode("utf-8")
    return outputs


def cmd_simulate(config_path: str, out_dir: str, seed: Optional[int] = None) -> CommandResult:
    """Run one scenario file, or every scenario file in a directory.

    Args:
        config_path: A scenario file or a directory of them.
        out_dir: The output directory; one sub-directory per file for a directory.
        seed: Seed override (beats DPATHSIM_SEED and the file).

    Returns:
        CommandResult: The summaries and written files.
    """
    path = Path(config_path)
    files = _config_files(path)
    configs = [load_scenario_config(file, seed=seed) for file in files]

    out = Path(out_dir)
    staged: Outputs = {}
    summaries = []
    for file, config in zip(files, configs):
        report = run_simulation(config)
        run_dir = out / file.stem if path.is_dir() else out
        staged.update(run_outputs(report, run_dir))
        summaries.append(render_summary(report))

    outputs = write_outputs(staged)
    return CommandResult(summary="\n".join(summaries), outputs=outputs)


def load_run(run_dir: str) -> SimulationReport:
    """Rebuild a report from a ``simulate`` output directory.

    Args:
        run_dir: The run directory.

    Returns:
        SimulationReport: The report.

    Raises:
        InvalidReportError: If the directory does not hold a consistent run.
    """
    path = Path(run_dir)
    try:
        config_values = yaml.safe_load((path / RUN_CONFIG_FILE).read_text(encoding="utf-8"))
        records_content = (path / RUN_RECORDS_FILE).read_bytes()
    except (OSError, UnicodeDecodeError, yaml.YAMLError) as e:
        raise InvalidReportError(f"{run_dir} is not a run directory: {e}") from e
    if not isinstance(config_values, dict):
        raise InvalidReportError(f"{path / RUN_CONFIG_FILE} is not a mapping")

    try:
        config: ScenarioConfig = build_config(config_values, env={})
    except ConfigError as e:
        raise InvalidReportError(f"{path / RUN_CONFIG_FILE}: {e}") from e
    records = parse_records_csv(records_content)
    try:
        return report_from_records(config, records)
    except ValidationError as e:
        raise InvalidReportError(f"{run_dir}: records do not match the config: {e.errors()[0]['msg']}") from e


def cmd_compare(run_a: str, run_b: str, out_csv: str) -> CommandResult:
    """Compare two run directories.

    Args:
        run_a: The reference run.
        run_b: The run compared against it.
        out_csv: Where the comparison CSV goes.

    Returns:
        CommandResult: The comparison table and written file.
    """
    comparison = compare_scenarios(load_run(run_a), load_run(run_b))
    outputs = write_outputs({Path(out_csv): export_comparison_csv(comparison)})
    return CommandResult(summary=comparison_table(comparison), outputs=outputs)


def cmd_scenarios() -> CommandResult:
    """List the bundled experiment matrix."""
    return CommandResult(summary=scenarios_table(ScenarioManager().get_all_configs()))


# -----------------------------------------------------------------------
# Parser
# -----------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser.

    Returns:
        argparse.ArgumentParser: The parser; it raises UsageError instead of exiting.
    """
    parser = _ArgumentParser(prog="dpathsim", description="Switch datapath delay simulator built on empirical stage-delay distributions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-D", "--debug", action="store_true", help="Enable debug logging")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    ecdf = commands.add_parser("ecdf", help="Build the ECDF of a delay trace")
    ecdf.add_argument("trace", help="Two-column trace file (sample index, delay in us)")
    ecdf.add_argument("-o", "--output", required=True, help="ECDF CSV to write")

    models = commands.add_parser("models", help="Reference and measured stage models")
    model_commands = models.add_subparsers(dest="models_command", required=True, parser_class=_ArgumentParser)
    synth = model_commands.add_parser("synth", help="Write every bundled reference model")
    synth.add_argument("-o", "--output", required=True, help="Directory to write the models into")
    check = model_commands.add_parser("check", help="Check the bundled scenarios against the calibration rules")
    check.add_argument("-s", "--scenario", action="append", help="Only check this scenario (repeatable)")
    build = model_commands.add_parser("build", help="Build a model from one trace per stage")
    for stage in Stage:
        build.add_argument(f"--{stage.value.replace('_', '-')}", dest=stage.value, required=True, metavar="TRACE", help=f"Trace of the {stage.value} stage")
    build.add_argument("--name", help="Model name (default: output file stem)")
    build.add_argument("--platform", choices=[platform.value for platform in Platform], help="Platform the traces were measured on")
    build.add_argument("-o", "--output", required=True, help="Model file to write")

    simulate = commands.add_parser("simulate", help="Run a scenario file or a directory of them")
    simulate.add_argument("config", help="Scenario file (key=value or YAML) or a directory of scenario files")
    simulate.add_argument("-o", "--output", required=True, help="Output directory")
    simulate.add_argument("--seed", type=int, help="Seed override (beats DPATHSIM_SEED and the file)")

    compare = commands.add_parser("compare", help="Compare two simulate output directories")
    compare.add_argument("run_a", help="Reference run directory")
    compare.add_argument("run_b", help="Run directory compared against it")
    compare.add_argument("-o", "--output", required=True, help="Comparison CSV to write")

    commands.add_parser("scenarios", help="List the bundled experiment matrix")
    return parser


def dispatch(args: argparse.Namespace) -> CommandResult:
    """Run the command selected by parsed arguments.

    Args:
        args: The parsed arguments.

    Returns:
        CommandResult: The command's outcome.
    """
    if args.command == "ecdf":
        return cmd_ecdf(args.trace, args.output)
    if args.command == "models":
        if args.models_command == "synth":
            return cmd_models_synth(args.output)
        if args.models_command == "check":
            return cmd_models_check(args.scenario)
        traces = {stage: getattr(args, stage.value) for stage in Stage}
        platform = Platform(args.platform) if args.platform else None
        return cmd_models_build(traces, args.output, name=args.name, platform=platform)
    if args.command == "simulate":
        return cmd_simulate(args.config, args.output, seed=args.seed)
    if args.command == "compare":
        return cmd_compare(args.run_a, args.run_b, args.output)
    return cmd_scenarios()


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point.

    Args:
        argv: Arguments without the program name; sys.argv[1:] if None.

    Returns:
        int: The process exit code.
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return ExitCode.USAGE_ERROR

    setup_logging(args.debug)
    try:
        result = dispatch(args)
    except ConfigError as e:
        logger.error(f"[CLI] {e}")
        return ExitCode.USAGE_ERROR
    except (DpathsimError, OSError, ValueError) as e:
        logger.error(f"[CLI] {e}")
        return ExitCode.DATA_ERROR

    if result.summary:
        print(result.summary)
    return result.exit_code
