"""Trial matrix: every (protocol, node count) cell run for the configured number of seeded trials."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from src.config import settings
from src.core.schemas import PROTOCOL_ORDER, ExperimentConfig, Protocol, TrafficMode
from src.core.simengine.policies import make_policy
from src.core.simengine.seeds import TOPOLOGY_STREAM, generator, mix64
from src.core.simengine.topology import build_topology
from src.core.simengine.traffic import (
    TrafficPlan,
    choose_sources,
    source_count,
    synthetic_plan,
    tracker_payloads,
    tracker_plan,
)
from src.core.simengine.world import Metrics, World, run
from src.utils import get_logger

logger = get_logger(__name__, settings.LOG_LEVEL, settings.LOG_FILE)


@dataclass(frozen=True, slots=True)
class TrialSpec:
    protocol: Protocol
    n: int
    cell_index: int
    trial: int

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return PROTOCOL_ORDER.index(self.protocol), self.n, self.trial


@dataclass
class TrialResult:
    spec: TrialSpec
    seed: int
    metrics: Metrics
    snapshot: str | None = None


def trial_matrix(config: ExperimentConfig) -> list[TrialSpec]:
    return [
        TrialSpec(protocol, n, cell_index, trial)
        for protocol in config.experiment.protocols
        for cell_index, n in enumerate(config.experiment.node_counts)
        for trial in range(config.experiment.trials)
    ]


def trial_seeds(config: ExperimentConfig, spec: TrialSpec) -> tuple[int, int]:
    """(topology seed, protocol seed). The topology seed does not depend on the protocol."""
    base = config.experiment.base_seed
    topology_seed = mix64(base, TOPOLOGY_STREAM, spec.cell_index, spec.trial)
    protocol_seed = mix64(base, PROTOCOL_ORDER.index(spec.protocol), spec.cell_index, spec.trial)
    return topology_seed, protocol_seed


def build_traffic(config: ExperimentConfig, node_ids: list[int], rng) -> TrafficPlan:
    traffic = config.traffic
    sources = choose_sources(node_ids, source_count(len(node_ids), traffic.source_fraction, traffic.sources), rng)
    if traffic.mode is TrafficMode.TRACKER:
        payloads = tracker_payloads(config.synthetic.spec(), config.tracker.params())
        return tracker_plan(sources, payloads, traffic.packet_bytes, traffic.frames_per_tick, rng)
    return synthetic_plan(sources, traffic.rate_bytes, traffic.packet_bytes)


def build_world(config: ExperimentConfig, spec: TrialSpec) -> tuple[World, int]:
    topology_seed, protocol_seed = trial_seeds(config, spec)
    layout_rng = generator(topology_seed)
    network = config.network
    topology = build_topology(spec.n, network.width, network.height, network.radio_range, layout_rng)
    traffic = build_traffic(config, topology.node_ids, layout_rng)
    world = World(config, topology, traffic, make_policy(spec.protocol, config), generator(protocol_seed))
    return world, protocol_seed


def run_trial(config: ExperimentConfig, spec: TrialSpec, keep_snapshot: bool = False) -> TrialResult:
    world, seed = build_world(config, spec)
    run(world, config.ticks(config.experiment.duration_s))
    logger.debug(
        f"{spec.protocol} n={spec.n} trial={spec.trial} seed={seed}: "
        f"delivered {world.metrics.delivered_bytes_total} B, {world.alive_count} alive"
    )
    return TrialResult(spec, seed, world.metrics, world.snapshot() if keep_snapshot else None)


def _run_packed(args: tuple[ExperimentConfig, TrialSpec, bool]) -> TrialResult:
    return run_trial(*args)


def run_experiment(config: ExperimentConfig, jobs: int = 1, keep_snapshots: bool = False) -> list[TrialResult]:
    """
    Runs the whole trial matrix.

    Trials are independent, each owning its world and generators, so they may run
    in worker processes. Results come back sorted by protocol, node count and
    trial, whatever the completion order.
    """
    specs = trial_matrix(config)
    logger.info(
        f"running {len(specs)} trial(s): {len(config.experiment.protocols)} protocol(s) x "
        f"{len(config.experiment.node_counts)} node count(s) x {config.experiment.trials} trial(s)"
    )
    work = [(config, spec, keep_snapshots) for spec in specs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_packed, work))
    else:
        results = [_run_packed(item) for item in work]
    return sorted(results, key=lambda result: result.spec.sort_key)
