import numpy as np
import pytest

from src.core.geometry import Point
from src.core.schemas import ExperimentConfig, parse_flat_config
from src.core.simengine import SINK_ID, Topology, unit_disk_graph
from src.core.tracker import BlobSequenceSpec

SMALL_CONFIG = """
experiment.protocols = rba, gpsr, leach
experiment.node_counts = 40
experiment.trials = 2
experiment.base_seed = 7
experiment.duration_s = 10
experiment.sample_interval_s = 5
network.width = 100
network.height = 100
network.radio_range = 30
network.unit_bytes = 100
traffic.sources = 4
traffic.rate_bytes = 1500
traffic.packet_bytes = 500
leach.round_s = 5
"""


@pytest.fixture
def small_config_text() -> str:
    return SMALL_CONFIG


@pytest.fixture
def small_config() -> ExperimentConfig:
    return parse_flat_config(SMALL_CONFIG)


@pytest.fixture
def blob_spec() -> BlobSequenceSpec:
    return BlobSequenceSpec(width=128, height=128, frames=100, sigma=4.0, speed=2.0, heading_deg=30.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


def make_topology(points: dict[int, tuple[float, float]], sink: tuple[float, float], radio_range: float) -> Topology:
    """Hand-placed topology for simulator scenarios."""
    positions = {node_id: Point(*xy) for node_id, xy in points.items()}
    positions[SINK_ID] = Point(*sink)
    return Topology(positions, positions[SINK_ID], radio_range, unit_disk_graph(positions, radio_range))
