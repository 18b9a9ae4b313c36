from pathlib import Path

import pytest

from src.core.exceptions import DataIOError, ValidationFailed
from src.core.schemas import PROTOCOL_ORDER, ExperimentConfig, Protocol, TrafficMode, load_config, parse_flat_config

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def test_defaults():
    config = ExperimentConfig()
    assert config.experiment.protocols == list(PROTOCOL_ORDER)
    assert config.experiment.trials == 10
    assert config.experiment.duration_s == 80
    assert config.experiment.sample_interval_s == 5
    assert config.network.capacity == 100
    assert config.predictor.epsilon == 0.01
    assert config.energy.initial_j == 0.5
    assert config.traffic.mode is TrafficMode.SYNTHETIC
    assert config.leach.p == 0.05
    assert load_config(None) == config


def test_parse_reads_sections(small_config):
    assert small_config.experiment.protocols == [Protocol.RBA, Protocol.GPSR, Protocol.LEACH]
    assert small_config.experiment.node_counts == [40]
    assert small_config.network.unit_bytes == 100
    assert small_config.traffic.sources == 4
    assert small_config.ticks(small_config.experiment.duration_s) == 10


def test_flat_text_round_trip(small_config):
    assert parse_flat_config(small_config.to_flat_text()) == small_config
    tweaked = small_config.with_overrides(base_seed=2**64 - 1, output_dir="out dir")
    assert parse_flat_config(tweaked.to_flat_text()) == tweaked


def test_comments_and_blank_lines():
    config = parse_flat_config("# header\n\nexperiment.trials = 3  # three\n   \n")
    assert config.experiment.trials == 3


def test_node_count_range():
    config = parse_flat_config("experiment.node_counts = 50:800:50\n")
    assert config.experiment.node_counts == list(range(50, 801, 50))
    assert len(config.experiment.node_counts) == 16
    assert parse_flat_config("experiment.node_counts = 10, 20\n").experiment.node_counts == [10, 20]


@pytest.mark.parametrize(
    "text, needle",
    [
        ("experiment.trials = 0\n", "experiment.trials"),
        ("experiment.colour = red\n", "experiment.colour: unknown key"),
        ("radio.range = 30\n", "radio: unknown key"),
        ("experiment.node_counts = 800:50:50\n", "experiment.node_counts"),
        ("experiment.node_counts = 50, 50\n", "distinct"),
        ("experiment.protocols = rba, aodv\n", "experiment.protocols"),
        ("experiment.base_seed = -1\n", "experiment.base_seed"),
        ("leach.p = 1\n", "leach.p"),
        ("network.radio_range = 0\n", "network.radio_range"),
        ("predictor.dt = 2\n", "experiment.sample_interval_s"),
        ("traffic.packet_bytes = 2000\nnetwork.unit_bytes = 10\n", "traffic.packet_bytes"),
        ("trials = 3\n", "expected 'section.key = value'"),
        ("experiment.trials = 2\nexperiment.trials = 3\n", "duplicate key experiment.trials"),
    ],
)
def test_invalid_configs(text, needle):
    with pytest.raises(ValidationFailed) as caught:
        parse_flat_config(text)
    assert any(needle in problem for problem in caught.value.problems)
    assert caught.value.exit_code == 1


def test_every_problem_is_reported():
    text = "experiment.trials = 0\nnetwork.capacity = -5\nbogus line\nenergy.nonsense = 1\n"
    with pytest.raises(ValidationFailed) as caught:
        parse_flat_config(text, "broken.conf")
    problems = caught.value.problems
    assert len(problems) == 4
    assert "broken.conf:3" in problems[0]
    assert "broken.conf" in caught.value.detail


def test_overrides_are_validated(small_config):
    assert small_config.with_overrides(base_seed=99).experiment.base_seed == 99
    assert small_config.with_overrides().experiment.base_seed == 7
    with pytest.raises(ValidationFailed):
        small_config.with_overrides(base_seed=-1)


def test_missing_config_file(tmp_path):
    with pytest.raises(DataIOError) as caught:
        load_config(tmp_path / "absent.conf")
    assert caught.value.exit_code == 2


def test_config_file(tmp_path, small_config_text):
    path = tmp_path / "small.conf"
    path.write_text(small_config_text, encoding="utf-8")
    assert load_config(path) == parse_flat_config(small_config_text)


@pytest.mark.parametrize(
    "name, trials, node_counts",
    [
        ("full_matrix.conf", 10, list(range(50, 801, 50))),
        ("delivered_n200.conf", 10, [200]),
        ("alive_n800.conf", 10, [800]),
        ("tracker_traffic.conf", 3, [200]),
    ],
)
def test_bundled_configs(name, trials, node_counts):
    config = load_config(CONFIGS / name)
    assert config.experiment.trials == trials
    assert config.experiment.node_counts == node_counts
    assert config.experiment.protocols == list(PROTOCOL_ORDER)


def test_full_matrix_size():
    config = load_config(CONFIGS / "full_matrix.conf")
    assert config.cell_count * config.experiment.trials == 480


def test_cross_section_problems_survive_field_errors():
    text = "experiment.trials = 0\ntraffic.packet_bytes = 999999999999\nleach.round_s = 2.5\n"
    with pytest.raises(ValidationFailed) as caught:
        parse_flat_config(text)
    problems = caught.value.problems
    assert len(problems) == 3
    assert problems[0].startswith("experiment.trials")
    assert any(problem.startswith("traffic.packet_bytes (999999999999)") for problem in problems)
    assert any(problem.startswith("leach.round_s (2.5)") for problem in problems)


def test_cross_section_checks_skip_invalid_sections():
    with pytest.raises(ValidationFailed) as caught:
        parse_flat_config("network.capacity = -5\ntraffic.packet_bytes = 999999999999\n")
    assert [problem.split(":")[0] for problem in caught.value.problems] == ["network.capacity"]
