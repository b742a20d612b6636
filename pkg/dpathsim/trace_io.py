"""Trace, ECDF, model and run-record file formats.

Trace files are whitespace-delimited two-column tables (sample index,
delay in microseconds); ``#`` lines are comments and ``# key=value``
comments carry stage/platform/scenario labels. Everything else is CSV
or a line-oriented text container so it stays diffable.
"""

import csv
import io
import math
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Tuple, Union

from loguru import logger
from pydantic import ValidationError

from dpathsim.empirical import as_delays, build_ecdf, from_cumulative_counts
from dpathsim.exceptions import (
    DpathsimError,
    DuplicateStageError,
    EmptyTraceError,
    IncompleteModelError,
    InvalidReportError,
    MalformedRowError,
    TraceParseError,
)
from dpathsim.models.empirical_distribution import EmpiricalDistribution
from dpathsim.models.flow import FlowKey
from dpathsim.models.packet_record import PacketRecord
from dpathsim.models.simulation_report import ScenarioComparison
from dpathsim.models.stage import Platform, Stage
from dpathsim.models.stage_delay_model import StageDelayModel
from dpathsim.models.trace_file import TraceFile, TraceRow

ECDF_HEADER = "value_us,cum_prob"
MODEL_MAGIC = "# dpathsim stage delay model"
TRACE_METADATA_KEYS = ("stage", "platform", "scenario")
# Denominators up to this size are recovered exactly from 12-decimal probabilities.
MAX_INFERRED_SAMPLES = 1_000_000

RECORD_FIELDS = (
    "packet_id",
    "arrival_time_us",
    "source_id",
    "destination_id",
    "size_class",
    "size_bytes",
    "cache_hit",
    "cpu_counters_us",
    "lookup_us",
    "upcall_us",
    "stats_update_us",
    "total_delay_us",
    "wait_us",
    "departure_time_us",
)

COMPARISON_FIELDS = (
    "metric",
    "ks_distance",
    "delta_min",
    "delta_max",
    "delta_mean",
    "delta_median",
    "delta_p95",
    "delta_p99",
)

Content = Union[bytes, str]


def _decode(content: Content) -> str:
    if isinstance(content, str):
        return content
    try:
        return content.decode("utf-8")
    except UnicodeDecodeError as e:
        raise TraceParseError(content[: e.start].count(b"\n") + 1, "content is not UTF-8 text") from e


def _parse_number(token: str, line: int, column: str) -> float:
    if "_" in token:
        raise TraceParseError(line, f"{column} '{token}' is not numeric")
    try:
        return float(token)
    except ValueError:
        raise TraceParseError(line, f"{column} '{token}' is not numeric") from None


# -----------------------------------------------------------------------
# Traces
# -----------------------------------------------------------------------
def parse_trace(content: Content) -> TraceFile:
    """Parse a two-column delay trace.

    Args:
        content: Raw file content.

    Returns:
        TraceFile: The rows, with delays rounded to 3 decimals.

    Raises:
        TraceParseError: On a non-numeric field or a non-increasing index.
        MalformedRowError: On a row with fewer than two columns.
        EmptyTraceError: If no data rows remain after filtering.
        InvalidSampleError: On a negative or non-finite delay.
    """
    text = _decode(content)
    metadata: Dict[str, str] = {}
    indices: List[int] = []
    delays: List[float] = []

    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].strip().partition("=")
            if sep and key.strip() in TRACE_METADATA_KEYS and value.strip():
                metadata[key.strip()] = value.strip()
            continue

        fields = line.split()
        if len(fields) < 2:
            raise MalformedRowError(line_number, f"expected 2 columns (index, delay), found {len(fields)}")
        index = _parse_number(fields[0], line_number, "sample index")
        if not math.isfinite(index) or not index.is_integer():
            raise TraceParseError(line_number, f"sample index '{fields[0]}' is not an integer")
        delay = _parse_number(fields[1], line_number, "delay")
        if indices and int(index) <= indices[-1]:
            raise TraceParseError(line_number, "sample index must be strictly increasing")
        indices.append(int(index))
        delays.append(delay)

    if not delays:
        raise EmptyTraceError("trace has no data rows")

    rounded = as_delays(delays).tolist()
    trace = TraceFile(
        rows=[TraceRow(sample_index=index, delay=delay) for index, delay in zip(indices, rounded)],
        **metadata,
    )
    logger.debug(f"[IO] Parsed trace with {len(trace.rows)} rows (stage={trace.stage})")
    return trace


def export_trace(trace: TraceFile) -> bytes:
    """Write a trace in the format parse_trace reads.

    Args:
        trace: The trace.

    Returns:
        bytes: The file content.
    """
    lines = [f"# {key}={getattr(trace, key)}" for key in TRACE_METADATA_KEYS if getattr(trace, key)]
    lines.extend(f"{row.sample_index} {row.delay:.3f}" for row in trace.rows)
    return ("\n".join(lines) + "\n").encode("utf-8")


def trace_to_distribution(trace: TraceFile) -> EmpiricalDistribution:
    """Build the ECDF of a trace's delay column.

    Returns:
        EmpiricalDistribution: The ECDF.
    """
    return build_ecdf(trace.delays)


def build_model_from_traces(name: str, traces: Dict[Stage, TraceFile], platform: Optional[Platform] = None) -> StageDelayModel:
    """Assemble a stage model from one measured trace per stage.

    Args:
        name: The model name.
        traces: One trace per stage.
        platform: The platform the traces were measured on, if known.

    Returns:
        StageDelayModel: The measured model.

    Raises:
        IncompleteModelError: If a stage has no trace.
    """
    for stage in Stage:
        if stage not in traces:
            raise IncompleteModelError(stage.value)
    return StageDelayModel(
        name=name,
        platform=platform,
        synthetic=False,
        description="measured",
        **{stage.value: trace_to_distribution(traces[stage]) for stage in Stage},
    )


# -----------------------------------------------------------------------
# ECDF CSV
# -----------------------------------------------------------------------
def _ecdf_lines(dist: EmpiricalDistribution) -> List[str]:
    return [ECDF_HEADER] + [f"{value:.3f},{prob:.12f}" for value, prob in zip(dist.support, dist.cum_prob)]


def export_ecdf_csv(dist: EmpiricalDistribution) -> bytes:
    """Write an ECDF as ``value_us,cum_prob`` CSV.

    Args:
        dist: The distribution.

    Returns:
        bytes: The CSV content.
    """
    return ("\n".join(_ecdf_lines(dist)) + "\n").encode("utf-8")


def _infer_sample_count(probabilities: List[float], line: int) -> int:
    denominator = 1
    for prob in probabilities:
        denominator = lcm(denominator, Fraction(prob).limit_denominator(MAX_INFERRED_SAMPLES).denominator)
        if denominator > MAX_INFERRED_SAMPLES:
            raise TraceParseError(line, f"no sample count up to {MAX_INFERRED_SAMPLES} fits these probabilities")
    return denominator


def _parse_ecdf_rows(rows: List[Tuple[int, str]]) -> Tuple[List[float], List[float]]:
    support: List[float] = []
    probabilities: List[float] = []
    for line_number, line in rows:
        fields = line.split(",")
        if len(fields) != 2:
            raise MalformedRowError(line_number, f"expected 2 columns (value_us, cum_prob), found {len(fields)}")
        support.append(_parse_number(fields[0].strip(), line_number, "value_us"))
        prob = _parse_number(fields[1].strip(), line_number, "cum_prob")
        if not 0.0 < prob <= 1.0:
            raise TraceParseError(line_number, f"cum_prob {fields[1].strip()} is outside (0, 1]")
        probabilities.append(prob)
    return support, probabilities


def _distribution_from_rows(support: List[float], probabilities: List[float], n_samples: int, line: int) -> EmpiricalDistribution:
    try:
        counts = [round(prob * n_samples) for prob in probabilities]
        return from_cumulative_counts(as_delays(support).tolist(), counts, n_samples)
    except (ValidationError, ValueError, OverflowError) as e:
        if isinstance(e, DpathsimError):
            raise
        raise TraceParseError(line, f"not a valid ECDF: {e}") from None


def parse_ecdf_csv(content: Content, n_samples: Optional[int] = None) -> EmpiricalDistribution:
    """Parse an ECDF CSV written by export_ecdf_csv.

    Args:
        content: The CSV content.
        n_samples: The sample count behind the ECDF. When given, exact
            cumulative counts are restored; otherwise the smallest sample
            count consistent with the probabilities is used. The CSV does
            not carry the count, so samples [10, 10, 20, 20, 30, 30, 40, 40]
            load back with n_samples=4: the same step function, but not
            equal to the original. Pass n_samples for an exact copy.

    Returns:
        EmpiricalDistribution: The distribution.
    """
    text = _decode(content)
    lines = [(number, line.strip()) for number, line in enumerate(text.splitlines(), start=1) if line.strip()]
    if not lines or lines[0][1] != ECDF_HEADER:
        raise TraceParseError(lines[0][0] if lines else 1, f"expected header '{ECDF_HEADER}'")
    if len(lines) == 1:
        raise EmptyTraceError("ECDF has no rows")
    support, probabilities = _parse_ecdf_rows(lines[1:])
    if n_samples is None:
        n_samples = _infer_sample_count(probabilities, lines[-1][0])
    return _distribution_from_rows(support, probabilities, n_samples, lines[-1][0])


# -----------------------------------------------------------------------
# Stage models
# -----------------------------------------------------------------------
def save_model(model: StageDelayModel) -> bytes:
    """Write a stage model: a header plus one labeled ECDF section per stage.

    Args:
        model: The model.

    Returns:
        bytes: The file content.
    """
    lines = [
        MODEL_MAGIC,
        f"name={model.name}",
        f"platform={model.platform.value if model.platform else ''}",
        f"synthetic={'true' if model.synthetic else 'false'}",
        f"description={model.description}",
    ]
    for stage, dist in model.stages().items():
        lines.append(f"[stage {stage.value}]")
        lines.append(f"n_samples={dist.n_samples}")
        lines.extend(_ecdf_lines(dist))
    return ("\n".join(lines) + "\n").encode("utf-8")


class _Section:
    def __init__(self, stage: Stage, line: int) -> None:
        self.stage = stage
        self.line = line
        self.n_samples: Optional[int] = None
        self.rows: List[Tuple[int, str]] = []
        self.has_header = False


def load_model(content: Content) -> StageDelayModel:
    """Read a stage model written by save_model.

    Args:
        content: The file content.

    Returns:
        StageDelayModel: The model; ``load_model(save_model(m)) == m``.

    Raises:
        IncompleteModelError: If a stage section is missing or truncated.
        DuplicateStageError: If a stage section appears twice.
        TraceParseError: On any other malformed content.
    """
    text = _decode(content)
    lines = text.splitlines()
    truncated = bool(text) and not text.endswith("\n")
    header: Dict[str, str] = {}
    sections: Dict[Stage, _Section] = {}
    current: Optional[_Section] = None

    for line_number, raw_line in enumerate(lines, start=1):
        line = raw_line.strip()
        if not line or line == MODEL_MAGIC:
            continue
        is_last = line_number == len(lines)
        try:
            if line.startswith("[") and line.endswith("]"):
                kind, _, label = line[1:-1].partition(" ")
                if kind != "stage":
                    raise TraceParseError(line_number, f"unknown section '{line}'")
                try:
                    stage = Stage(label.strip())
                except ValueError:
                    raise TraceParseError(line_number, f"unknown stage '{label.strip()}'") from None
                if stage in sections:
                    raise DuplicateStageError(stage.value)
                current = sections[stage] = _Section(stage, line_number)
            elif current is None:
                key, sep, value = raw_line.partition("=")
                if not sep:
                    raise TraceParseError(line_number, f"expected key=value in model header, found '{line}'")
                header[key.strip()] = value
            elif line.startswith("n_samples="):
                value = line.partition("=")[2]
                if not (value.isascii() and value.isdigit()) or int(value) < 1:
                    raise TraceParseError(line_number, f"invalid n_samples '{value}'")
                current.n_samples = int(value)
            elif line == ECDF_HEADER:
                current.has_header = True
            else:
                if not current.has_header:
                    raise TraceParseError(line_number, f"expected header '{ECDF_HEADER}'")
                _parse_ecdf_rows([(line_number, line)])
                current.rows.append((line_number, line))
        except (TraceParseError, MalformedRowError):
            if truncated and is_last and current is not None:
                raise IncompleteModelError(current.stage.value, f"stage '{current.stage.value}' is truncated") from None
            raise

    stages: Dict[str, EmpiricalDistribution] = {}
    for stage in Stage:
        section = sections.get(stage)
        if section is None:
            raise IncompleteModelError(stage.value)
        if section.n_samples is None or not section.rows:
            raise IncompleteModelError(stage.value, f"stage '{stage.value}' is truncated")
        support, probabilities = _parse_ecdf_rows(section.rows)
        if probabilities[-1] != 1.0:
            raise IncompleteModelError(stage.value, f"stage '{stage.value}' is truncated")
        stages[stage.value] = _distribution_from_rows(support, probabilities, section.n_samples, section.rows[-1][0])

    try:
        return StageDelayModel(
            name=header.get("name", ""),
            platform=header.get("platform") or None,
            synthetic=header.get("synthetic", "false").lower() == "true",
            description=header.get("description", ""),
            **stages,
        )
    except ValidationError as e:
        raise TraceParseError(1, f"invalid model header: {e}") from None


# -----------------------------------------------------------------------
# Run records and comparisons
# -----------------------------------------------------------------------
def export_records_csv(records: List[PacketRecord]) -> bytes:
    """Write packet records as CSV with lossless float formatting.

    Args:
        records: The records.

    Returns:
        bytes: The CSV content.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(RECORD_FIELDS)
    for record in records:
        writer.writerow(
            [
                record.packet_id,
                repr(record.arrival_time),
                record.flow.source_id,
                record.flow.destination_id,
                record.flow.size_class,
                record.size_bytes,
                int(record.cache_hit),
                repr(record.cpu_counters),
                repr(record.lookup),
                repr(record.upcall),
                repr(record.stats_update),
                repr(record.total_delay),
                repr(record.wait),
                repr(record.departure_time),
            ]
        )
    return buffer.getvalue().encode("utf-8")


def parse_records_csv(content: Content) -> List[PacketRecord]:
    """Read packet records written by export_records_csv.

    Args:
        content: The CSV content.

    Returns:
        List[PacketRecord]: The records.

    Raises:
        InvalidReportError: If the header is wrong or a row is inconsistent.
    """
    reader = csv.DictReader(io.StringIO(_decode(content)))
    if tuple(reader.fieldnames or ()) != RECORD_FIELDS:
        raise InvalidReportError(f"records header must be {','.join(RECORD_FIELDS)}")
    records: List[PacketRecord] = []
    for row in reader:
        try:
            records.append(
                PacketRecord(
                    packet_id=int(row["packet_id"]),
                    arrival_time=float(row["arrival_time_us"]),
                    flow=FlowKey(
                        source_id=int(row["source_id"]),
                        destination_id=int(row["destination_id"]),
                        size_class=int(row["size_class"]),
                    ),
                    size_bytes=int(row["size_bytes"]),
                    cache_hit=row["cache_hit"] == "1",
                    cpu_counters=float(row["cpu_counters_us"]),
                    lookup=float(row["lookup_us"]),
                    upcall=float(row["upcall_us"]),
                    stats_update=float(row["stats_update_us"]),
                    total_delay=float(row["total_delay_us"]),
                    wait=float(row["wait_us"]),
                    departure_time=float(row["departure_time_us"]),
                )
            )
        except (TypeError, ValueError) as e:
            raise InvalidReportError(f"record on line {reader.line_num} is invalid: {e}") from None
    return records


def export_comparison_csv(comparison: ScenarioComparison) -> bytes:
    """Write a scenario comparison table as CSV.

    Args:
        comparison: The comparison.

    Returns:
        bytes: The CSV content.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(COMPARISON_FIELDS)
    for row in comparison.rows:
        writer.writerow([row.metric] + [repr(getattr(row, field)) for field in COMPARISON_FIELDS[1:]])
    return buffer.getvalue().encode("utf-8")
