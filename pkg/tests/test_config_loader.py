"""Tests for scenario configuration loading."""

import pytest

from dpathsim.config_loader import SEED_ENV_VAR, build_config, load_scenario_config, parse_key_value
from dpathsim.exceptions import ConfigError
from dpathsim.models.stage import ArrivalProcess, Platform

FLAT_CONFIG = """\
# VOI at 750 Kb/s
platform=VOI
ram_gb=1.0
cpu_cores=1
packet_size_bytes=576
data_rate_bps=750000
packet_count=500
seed=42
model_source=voi-576b-750kbps
cache_capacity=16
"""


@pytest.fixture
def flat_file(tmp_path):
    path = tmp_path / "voi-750.conf"
    path.write_text(FLAT_CONFIG)
    return path


@pytest.mark.unit
class TestParseKeyValue:
    """Flat key=value text."""

    def test_skips_comments_and_blanks(self):
        assert parse_key_value("# x\n\na = 1\nb=two words\n") == {"a": "1", "b": "two words"}

    def test_missing_equals(self):
        with pytest.raises(ConfigError) as exc:
            parse_key_value("platform=VOI\nram_gb\n")
        assert "line 2" in str(exc.value)

    def test_duplicate_key(self):
        with pytest.raises(ConfigError) as exc:
            parse_key_value("seed=1\nseed=2\n")
        assert exc.value.key == "seed"


@pytest.mark.unit
class TestLoadScenarioConfig:
    """Loading and validating scenario files."""

    def test_flat_file(self, flat_file):
        config = load_scenario_config(flat_file, env={})
        assert config.name == "voi-750"
        assert config.platform is Platform.VOI
        assert config.packet_size_bytes == 576
        assert config.rate_range == (750_000.0, 750_000.0)
        assert (config.packet_count, config.seed, config.cache_capacity) == (500, 42, 16)
        assert config.arrival_process is ArrivalProcess.CBR
        assert config.eviction is True

    def test_yaml_file(self, tmp_path):
        path = tmp_path / "boi.yaml"
        path.write_text(
            "platform: BOI\nram_gb: 8\ncpu_cores: 4\npacket_size_bytes: variable\n"
            "packet_size_set: [64, 1500]\ndata_rate_bps_lo: 10000\ndata_rate_bps_hi: 15000\n"
            "model_source: boi-vps-750kbps\narrival_process: poisson\n"
        )
        config = load_scenario_config(path, env={})
        assert config.packet_sizes == [64, 1500]
        assert config.rate_range == (10_000.0, 15_000.0)
        assert config.arrival_process is ArrivalProcess.POISSON

    def test_variable_sizes_from_flat_list(self, tmp_path):
        path = tmp_path / "vps.conf"
        path.write_text(FLAT_CONFIG.replace("packet_size_bytes=576", "packet_size_bytes=variable\npacket_size_set=64, 128,256"))
        assert load_scenario_config(path, env={}).packet_sizes == [64, 128, 256]

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "bad.conf"
        path.write_text(FLAT_CONFIG + "turbo=yes\n")
        with pytest.raises(ConfigError) as exc:
            load_scenario_config(path, env={})
        assert exc.value.key == "turbo"
        assert exc.value.code == "invalid-config"

    @pytest.mark.parametrize(
        ("line", "replacement", "key"),
        [
            ("ram_gb=1.0", "ram_gb=16", "ram_gb"),
            ("cpu_cores=1", "cpu_cores=0", "cpu_cores"),
            ("packet_count=500", "packet_count=0", "packet_count"),
            ("platform=VOI", "platform=XEN", "platform"),
            ("seed=42", "seed=-1", "seed"),
        ],
    )
    def test_invalid_value_names_key(self, tmp_path, line, replacement, key):
        path = tmp_path / "bad.conf"
        path.write_text(FLAT_CONFIG.replace(line, replacement))
        with pytest.raises(ConfigError) as exc:
            load_scenario_config(path, env={})
        assert exc.value.key == key

    def test_rate_range_order(self, tmp_path):
        path = tmp_path / "bad.conf"
        path.write_text(FLAT_CONFIG.replace("data_rate_bps=750000", "data_rate_bps_lo=15000\ndata_rate_bps_hi=10000"))
        with pytest.raises(ConfigError):
            load_scenario_config(path, env={})

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_scenario_config(tmp_path / "nope.conf")

    def test_environment_reference(self, tmp_path):
        path = tmp_path / "env.conf"
        path.write_text(FLAT_CONFIG.replace("model_source=voi-576b-750kbps", "model_source=${MODEL}"))
        assert load_scenario_config(path, env={"MODEL": "boi-576b-750kbps"}).model_source == "boi-576b-750kbps"
        with pytest.raises(ConfigError) as exc:
            load_scenario_config(path, env={})
        assert exc.value.key == "model_source"


@pytest.mark.unit
class TestSeedPrecedence:
    """Flag beats environment beats file."""

    def test_file_seed(self, flat_file):
        assert load_scenario_config(flat_file, env={}).seed == 42

    def test_environment_beats_file(self, flat_file):
        assert load_scenario_config(flat_file, env={SEED_ENV_VAR: "7"}).seed == 7

    def test_flag_beats_environment(self, flat_file):
        assert load_scenario_config(flat_file, env={SEED_ENV_VAR: "7"}, seed=3).seed == 3

    def test_process_environment(self, flat_file, monkeypatch):
        monkeypatch.setenv(SEED_ENV_VAR, "11")
        assert load_scenario_config(flat_file).seed == 11

    def test_build_config_ignores_environment_when_given_empty(self, monkeypatch):
        monkeypatch.setenv(SEED_ENV_VAR, "11")
        values = {"platform": "BOI", "ram_gb": 8, "cpu_cores": 4, "packet_size_bytes": 576, "data_rate_bps": 750000, "model_source": "x", "seed": 5}
        assert build_config(values, env={}).seed == 5
