"""Tests for trace, ECDF, model and record file formats."""

import numpy as np
import pytest
from pydantic import ValidationError

from dpathsim.empirical import build_ecdf
from dpathsim.exceptions import (
    DpathsimError,
    DuplicateStageError,
    EmptyTraceError,
    IncompleteModelError,
    InvalidReportError,
    InvalidSampleError,
    MalformedRowError,
    TraceParseError,
)
from dpathsim.model_registry import ModelRegistry
from dpathsim.models.stage import Platform, Stage
from dpathsim.models.stage_delay_model import StageDelayModel
from dpathsim.models.trace_file import TraceFile, TraceRow
from dpathsim.simulator import run_simulation
from dpathsim.trace_io import (
    build_model_from_traces,
    export_ecdf_csv,
    export_records_csv,
    export_trace,
    load_model,
    parse_ecdf_csv,
    parse_records_csv,
    parse_trace,
    save_model,
    trace_to_distribution,
)


def random_distribution(rng: np.random.Generator):
    return build_ecdf(np.round(rng.gamma(2.0, 4.0, size=int(rng.integers(1, 400))), int(rng.integers(0, 4))))


def random_model(rng: np.random.Generator, name: str = "random") -> StageDelayModel:
    return StageDelayModel(name=name, platform=Platform.BOI, description="fuzz", **{stage.value: random_distribution(rng) for stage in Stage})


@pytest.mark.unit
class TestParseTrace:
    """Two-column trace parsing."""

    def test_two_rows(self):
        trace = parse_trace(b"1 12.5\n2 13.0\n")
        assert trace.delays == [12.5, 13.0]
        assert [row.sample_index for row in trace.rows] == [1, 2]

    def test_comments_and_blank_lines(self):
        trace = parse_trace(b"# comment\n\n1 9\n")
        assert trace.delays == [9.0]

    def test_metadata_comments(self):
        trace = parse_trace("# stage=lookup\n# platform=VOI\n# scenario=voi-576b-750kbps\n# note=ignored\n1\t4.25\n")
        assert (trace.stage, trace.platform, trace.scenario) == ("lookup", "VOI", "voi-576b-750kbps")

    def test_extra_columns_ignored(self):
        assert parse_trace(b"1 2.0 extra\n").delays == [2.0]

    def test_rounds_delays(self):
        assert parse_trace(b"1 1.23456\n").delays == [1.235]

    def test_non_numeric_field(self):
        with pytest.raises(TraceParseError) as exc:
            parse_trace(b"1 1.0\n2 abc\n")
        assert exc.value.line == 2
        assert exc.value.code == "parse-error"

    @pytest.mark.parametrize("content", [b"1_0 2\n", b"1 2_5\n"])
    def test_underscore_digits(self, content):
        with pytest.raises(TraceParseError) as exc:
            parse_trace(content)
        assert exc.value.line == 1

    def test_blank_metadata_value(self):
        trace = parse_trace("# stage=\n# platform=  \n1 4\n")
        assert (trace.stage, trace.platform) == (None, None)

    @pytest.mark.parametrize("label", ["look\nup", "look\x0cup", " lookup", "lookup\t", ""])
    def test_labels_are_plain(self, label):
        with pytest.raises(ValidationError):
            TraceFile(rows=[TraceRow(sample_index=1, delay=1.0)], stage=label)

    def test_single_column(self):
        with pytest.raises(MalformedRowError) as exc:
            parse_trace(b"# header\n1 1.0\n7\n")
        assert exc.value.line == 3

    @pytest.mark.parametrize("content", [b"", b"# only comments\n\n"])
    def test_empty(self, content):
        with pytest.raises(EmptyTraceError):
            parse_trace(content)

    def test_index_must_increase(self):
        with pytest.raises(TraceParseError) as exc:
            parse_trace(b"1 1.0\n1 2.0\n")
        assert exc.value.line == 2

    def test_negative_delay(self):
        with pytest.raises(InvalidSampleError):
            parse_trace(b"1 -3.0\n")

    def test_not_utf8(self):
        with pytest.raises(TraceParseError):
            parse_trace(b"1 1.0\n\xff\xfe 2\n")

    def test_round_trip(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 100))
            indices = np.cumsum(rng.integers(1, 5, size=n)).tolist()
            delays = np.round(rng.uniform(0, 50, size=n), 3).tolist()
            trace = TraceFile(rows=[TraceRow(sample_index=i, delay=d) for i, d in zip(indices, delays)], stage="upcall", platform="BOI")
            assert parse_trace(export_trace(trace)) == trace

    @pytest.mark.slow
    def test_never_panics(self):
        rng = np.random.default_rng(99)
        alphabet = list(b"0123456789 .-e\n\t#=abc+") + [0xFF, 0xC3]
        for _ in range(2000):
            content = bytes(rng.choice(alphabet, size=int(rng.integers(0, 80))).tolist())
            try:
                parse_trace(content)
            except DpathsimError:
                pass


@pytest.mark.unit
class TestEcdfCsv:
    """ECDF CSV export and parse."""

    def test_point_mass(self):
        assert export_ecdf_csv(build_ecdf([5])) == b"value_us,cum_prob\n5.000,1.000000000000\n"

    def test_three_rows(self):
        assert export_ecdf_csv(build_ecdf([10, 10, 20, 30])).decode().splitlines()[1:] == [
            "10.000,0.500000000000",
            "20.000,0.750000000000",
            "30.000,1.000000000000",
        ]

    def test_round_trip_with_sample_count(self, rng):
        for _ in range(500):
            dist = random_distribution(rng)
            assert parse_ecdf_csv(export_ecdf_csv(dist), n_samples=dist.n_samples) == dist

    def test_round_trip_inferred_sample_count(self, rng):
        for _ in range(500):
            dist = random_distribution(rng)
            parsed = parse_ecdf_csv(export_ecdf_csv(dist))
            assert parsed.support == dist.support
            assert parsed.cum_prob == dist.cum_prob
            assert dist.n_samples % parsed.n_samples == 0

    def test_bad_header(self):
        with pytest.raises(TraceParseError):
            parse_ecdf_csv(b"value,prob\n1.0,1.0\n")

    def test_no_rows(self):
        with pytest.raises(EmptyTraceError):
            parse_ecdf_csv(b"value_us,cum_prob\n")

    def test_probability_out_of_range(self):
        with pytest.raises(TraceParseError) as exc:
            parse_ecdf_csv(b"value_us,cum_prob\n1.000,0.5\n2.000,1.5\n")
        assert exc.value.line == 3

    def test_underscore_digits(self):
        with pytest.raises(TraceParseError) as exc:
            parse_ecdf_csv(b"value_us,cum_prob\n1_0.000,1.0\n")
        assert exc.value.line == 2

    def test_inferred_count_is_smallest(self):
        dist = build_ecdf([10, 10, 20, 20, 30, 30, 40, 40])
        parsed = parse_ecdf_csv(export_ecdf_csv(dist))
        assert parsed.n_samples == 4
        assert parsed != dist
        assert (parsed.support, parsed.cum_prob) == (dist.support, dist.cum_prob)
        assert parse_ecdf_csv(export_ecdf_csv(dist), n_samples=8) == dist

    def test_not_ending_at_one(self):
        with pytest.raises(TraceParseError):
            parse_ecdf_csv(b"value_us,cum_prob\n1.000,0.250000000000\n2.000,0.500000000000\n")

    def test_trace_pipeline(self):
        trace = parse_trace(b"1 10\n2 10\n3 20\n4 30\n")
        assert parse_ecdf_csv(export_ecdf_csv(trace_to_distribution(trace)), n_samples=4) == build_ecdf([10, 10, 20, 30])


@pytest.mark.unit
class TestModelFiles:
    """Stage model save/load."""

    def test_point_mass_round_trip(self, point_mass_model):
        assert load_model(save_model(point_mass_model)) == point_mass_model

    def test_random_round_trip(self, rng):
        for index in range(200):
            model = random_model(rng, name=f"random-{index}")
            assert load_model(save_model(model)) == model

    def test_padded_description_round_trip(self, point_mass_model):
        model = point_mass_model.model_copy(update={"description": "  padded  "})
        assert load_model(save_model(model)) == model

    @pytest.mark.parametrize("description", ["x\x0cy", "x\u2028y", "x\ry", "x\ny"])
    def test_description_must_be_one_line(self, point_mass_model, description):
        with pytest.raises(ValidationError):
            StageDelayModel(**{**point_mass_model.model_dump(), "description": description})

    def test_reference_round_trip(self):
        model = ModelRegistry().get_model("voi-576b-750kbps")
        assert load_model(save_model(model)) == model

    def test_missing_stage(self, point_mass_model):
        text = save_model(point_mass_model).decode()
        head, _, rest = text.partition("[stage upcall]")
        _, _, tail = rest.partition("[stage stats_update]")
        with pytest.raises(IncompleteModelError) as exc:
            load_model(head + "[stage stats_update]" + tail)
        assert exc.value.stage == "upcall"
        assert exc.value.code == "incomplete-model"

    @pytest.mark.parametrize("offset", [-5, 5, 20, 40])
    def test_truncated_file(self, rng, offset):
        content = save_model(random_model(rng))
        cut = content[: content.index(b"[stage upcall]") + offset]
        with pytest.raises(IncompleteModelError) as exc:
            load_model(cut)
        assert exc.value.stage in {"lookup", "upcall"}

    def test_truncated_last_stage(self, point_mass_model):
        content = save_model(point_mass_model)
        with pytest.raises(IncompleteModelError) as exc:
            load_model(content[: content.rindex(b"\n2.000")])
        assert exc.value.stage == "stats_update"

    def test_duplicate_stage(self, point_mass_model):
        text = save_model(point_mass_model).decode()
        section = text[text.index("[stage lookup]") : text.index("[stage upcall]")]
        with pytest.raises(DuplicateStageError) as exc:
            load_model(text + section)
        assert exc.value.stage == "lookup"

    def test_unknown_stage(self, point_mass_model):
        with pytest.raises(TraceParseError):
            load_model(save_model(point_mass_model).decode().replace("[stage lookup]", "[stage bogus]"))

    @pytest.mark.slow
    def test_never_panics(self, point_mass_model):
        rng = np.random.default_rng(4)
        content = save_model(point_mass_model)
        for _ in range(2000):
            mutated = bytearray(content)
            for _ in range(int(rng.integers(1, 6))):
                mutated[int(rng.integers(len(mutated)))] = int(rng.integers(256))
            try:
                load_model(bytes(mutated[: int(rng.integers(len(mutated) + 1))]))
            except DpathsimError:
                pass

    def test_build_from_traces(self):
        traces = {stage: parse_trace(f"1 {value}\n2 {value}\n") for stage, value in zip(Stage, (4, 3, 5, 2))}
        model = build_model_from_traces("measured", traces, Platform.VOI)
        assert model.cpu_counters.support == (4.0,)
        assert model.synthetic is False
        assert model.platform is Platform.VOI

    def test_build_needs_every_stage(self):
        with pytest.raises(IncompleteModelError) as exc:
            build_model_from_traces("measured", {Stage.LOOKUP: parse_trace(b"1 1\n")})
        assert exc.value.stage == "cpu_counters"


@pytest.mark.unit
class TestRecordsCsv:
    """Packet record export and parse."""

    def test_round_trip(self, make_config, registry):
        report = run_simulation(make_config(model_source="voi-vps-750kbps", packet_size_bytes="variable", packet_size_set=[64, 1500], flow_count=3, packet_count=500), registry)
        assert parse_records_csv(export_records_csv(report.records)) == report.records

    def test_bad_header(self):
        with pytest.raises(InvalidReportError):
            parse_records_csv(b"packet_id,total\n0,1.0\n")

    def test_inconsistent_row(self, make_config, registry):
        report = run_simulation(make_config(packet_count=2), registry)
        lines = export_records_csv(report.records).decode().splitlines()
        fields = lines[1].split(",")
        fields[11] = "99.0"
        lines[1] = ",".join(fields)
        with pytest.raises(InvalidReportError):
            parse_records_csv("\n".join(lines) + "\n")
