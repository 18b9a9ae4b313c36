"""
Simulator state and the per-tick step.

One tick: sources emit, nodes forward in synchronous rounds within their
capacity budget, loads and predicted RBAs are refreshed, idle drain is charged,
exhausted nodes die and metrics are sampled.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from src.config import settings
from src.core.exceptions import InvariantViolation
from src.core.geometry import Point, distance
from src.core.predictor import PredictorState, initial_state, measure_rba, update_and_predict
from src.core.protocols import Neighbor, PerimeterState, RoutingDecision, gabriel_neighbors
from src.core.schemas import ExperimentConfig
from src.core.simengine.energy import RadioModel
from src.core.simengine.topology import SINK_ID, Topology
from src.core.simengine.traffic import TrafficPlan
from src.utils import get_logger

if TYPE_CHECKING:
    from src.core.simengine.policies import RoutingPolicy

logger = get_logger(__name__, settings.LOG_LEVEL, settings.LOG_FILE)


@dataclass(slots=True)
class Packet:
    id: int
    source: int
    size: int
    created_tick: int
    hops: list[int]
    delivered_tick: int | None = None
    perimeter: PerimeterState | None = None


@dataclass(slots=True)
class NodeState:
    id: int
    position: Point
    capacity: float
    energy: float
    predictor: PredictorState
    predicted_rba: float
    load: float = 0.0
    alive: bool = True
    queue: deque[Packet] = field(default_factory=deque)
    last_head_round: int | None = None

    @property
    def rba(self) -> float:
        return measure_rba(self.capacity, self.load)

    @property
    def queued_bytes(self) -> int:
        return sum(packet.size for packet in self.queue)


@dataclass
class Metrics:
    tick_seconds: float
    emitted_bytes: int = 0
    delivered_bytes_total: int = 0
    delivered_packets: int = 0
    delay_ticks_total: int = 0
    drops: int = 0
    dropped_bytes: int = 0
    control_messages: int = 0
    alive_count_timeline: list[tuple[float, int]] = field(default_factory=list)

    @property
    def mean_delay(self) -> float:
        """Mean creation-to-sink delay of delivered packets, in seconds."""
        if self.delivered_packets == 0:
            return 0.0
        return self.delay_ticks_total * self.tick_seconds / self.delivered_packets


class World:
    def __init__(
        self,
        config: ExperimentConfig,
        topology: Topology,
        traffic: TrafficPlan,
        policy: "RoutingPolicy",
        rng: np.random.Generator,
        capacities: dict[int, float] | None = None,
    ):
        self.config = config
        self.params = config.predictor.params()
        self.radio = RadioModel(config.energy.e_elec, config.energy.eps_amp)
        self.sink = topology.sink
        self.graph = topology.graph.copy()
        self.traffic = traffic
        self.policy = policy
        self.rng = rng
        self.tick = 0
        self.metrics = Metrics(self.params.dt)

        capacity = config.network.capacity
        capacities = capacities or {}
        self.nodes: dict[int, NodeState] = {
            node_id: NodeState(
                id=node_id,
                position=topology.positions[node_id],
                capacity=capacities.get(node_id, capacity),
                energy=config.energy.initial_j,
                predictor=initial_state(self.params),
                predicted_rba=capacities.get(node_id, capacity),
            )
            for node_id in topology.node_ids
        }
        self.forwarded_bytes: dict[int, int] = dict.fromkeys(self.nodes, 0)
        self._sample_every = config.ticks(config.experiment.sample_interval_s)
        self._next_packet_id = 0
        self._neighbors: dict[int, list[Neighbor]] = {}
        self._planar: dict[int, list[Neighbor]] = {}
        self.metrics.alive_count_timeline.append((0.0, self.alive_count))

    @property
    def time_s(self) -> float:
        return self.tick * self.params.dt

    @property
    def alive_count(self) -> int:
        return sum(1 for node in self.nodes.values() if node.alive)

    @property
    def queued_bytes(self) -> int:
        return sum(node.queued_bytes for node in self.nodes.values())

    def budget_bytes(self, node: NodeState) -> float:
        """Bytes a node may forward in one tick."""
        return node.capacity * self.config.network.unit_bytes * self.params.dt

    def alive_nodes(self) -> list[NodeState]:
        return [node for _, node in sorted(self.nodes.items()) if node.alive]

    def sink_adjacent(self, node_id: int) -> bool:
        return self.graph.has_edge(node_id, SINK_ID)

    def alive_neighbors(self, node_id: int) -> list[Neighbor]:
        """Alive radio neighbours of a node, sink excluded, in id order."""
        cached = self._neighbors.get(node_id)
        if cached is None:
            cached = [
                Neighbor(other, self.nodes[other].position)
                for other in sorted(self.graph.neighbors(node_id))
                if other != SINK_ID
            ]
            self._neighbors[node_id] = cached
        return cached

    def planar_neighbors(self, node_id: int) -> list[Neighbor]:
        cached = self._planar.get(node_id)
        if cached is None:
            cached = gabriel_neighbors(self.nodes[node_id].position, self.alive_neighbors(node_id))
            self._planar[node_id] = cached
        return cached

    def headroom(self, node: NodeState) -> float:
        """Bandwidth units a node has not yet committed this tick, counting what it sent and what it holds."""
        unit = self.config.network.unit_bytes * self.params.dt
        committed = (self.forwarded_bytes[node.id] + node.queued_bytes) / unit
        return max(node.capacity - committed, 0.0)

    def neighbor_view(self, node_id: int) -> list[Neighbor]:
        """
        Probe responses.

        A neighbour answers with its predicted RBA for the tick, capped by the
        headroom it has left after the traffic it already took on in this tick.
        """
        view = []
        for neighbor in self.alive_neighbors(node_id):
            state = self.nodes[neighbor.node_id]
            view.append(Neighbor(neighbor.node_id, neighbor.position, min(state.predicted_rba, self.headroom(state))))
        return view

    def charge_control(self, node_id: int, count: int = 1) -> None:
        if count <= 0:
            return
        self.metrics.control_messages += count
        self.nodes[node_id].energy -= count * self.config.energy.control_message_j

    def step(self) -> "World":
        before = {node_id: node.energy for node_id, node in self.nodes.items()}
        self.policy.start_tick(self)
        self._emit()
        self._forward()
        self._refresh_predictions()
        self._drain_idle()
        self._bury_exhausted()
        self.tick += 1
        if self.tick % self._sample_every == 0:
            self.metrics.alive_count_timeline.append((self.time_s, self.alive_count))
        if self.config.experiment.check_invariants:
            self.check_invariants(before)
        return self

    def _emit(self) -> None:
        for index, source in enumerate(self.traffic.sources):
            node = self.nodes[source]
            if not node.alive:
                continue
            for size in self.traffic.packets(index, self.tick):
                node.queue.append(Packet(self._next_packet_id, source, size, self.tick, [source]))
                self._next_packet_id += 1
                self.metrics.emitted_bytes += size

    def _forward(self) -> None:
        """
        Moves packets at most one hop per round until a round moves nothing.

        Each node only considers the packets it held when the round began, so a
        packet cannot cross two hops in one round.
        """
        max_hops = self.config.network.max_hops
        remaining = {node_id: self.budget_bytes(node) for node_id, node in self.nodes.items()}
        forwarded = self.forwarded_bytes = dict.fromkeys(self.nodes, 0)

        for _ in range(self.config.network.max_rounds_per_tick):
            pending = [(node.id, len(node.queue)) for node in self.alive_nodes() if node.queue]
            moved = False
            for node_id, count in pending:
                node = self.nodes[node_id]
                for _ in range(count):
                    packet = node.queue[0]
                    if packet.size > remaining[node_id]:
                        break
                    node.queue.popleft()
                    if len(packet.hops) - 1 >= max_hops:
                        self._drop(packet)
                        continue
                    decision = self.policy.next_hop(self, node, packet)
                    if decision.next_hop is None:
                        self._drop(packet)
                        continue
                    self._transmit(node, packet, decision)
                    remaining[node_id] -= packet.size
                    forwarded[node_id] += packet.size
                    moved = True
            if not moved:
                break

    def _transmit(self, node: NodeState, packet: Packet, decision: RoutingDecision) -> None:
        target = decision.next_hop
        target_position = self.sink if target == SINK_ID else self.nodes[target].position
        node.energy -= self.radio.tx_cost(packet.size, distance(node.position, target_position))
        packet.hops.append(target)
        packet.perimeter = decision.perimeter
        if target == SINK_ID:
            packet.delivered_tick = self.tick
            self.metrics.delivered_bytes_total += packet.size
            self.metrics.delivered_packets += 1
            self.metrics.delay_ticks_total += self.tick - packet.created_tick
            return
        receiver = self.nodes[target]
        receiver.energy -= self.radio.rx_cost(packet.size)
        receiver.queue.append(packet)

    def _drop(self, packet: Packet) -> None:
        self.metrics.drops += 1
        self.metrics.dropped_bytes += packet.size

    def _refresh_predictions(self) -> None:
        unit = self.config.network.unit_bytes * self.params.dt
        for node in self.nodes.values():
            if not node.alive:
                continue
            node.load = self.forwarded_bytes[node.id] / unit
            node.predictor, predicted = update_and_predict(node.predictor, self.params, node.rba)
            node.predicted_rba = min(predicted, node.capacity)

    def _drain_idle(self) -> None:
        idle = self.config.energy.idle_j
        if idle <= 0:
            return
        for node in self.nodes.values():
            if node.alive:
                node.energy -= idle

    def _bury_exhausted(self) -> None:
        dead = [node for node in self.alive_nodes() if node.energy <= 0]
        if not dead:
            return
        for node in dead:
            node.alive = False
            node.load = 0.0
            while node.queue:
                self._drop(node.queue.popleft())
            self.graph.remove_node(node.id)
        self._neighbors.clear()
        self._planar.clear()
        logger.debug(f"tick {self.tick}: {len(dead)} node(s) exhausted, {self.alive_count} alive")
        self.policy.on_deaths(self, [node.id for node in dead])

    def check_invariants(self, energy_before: dict[int, float] | None = None) -> None:
        metrics = self.metrics
        accounted = metrics.delivered_bytes_total + self.queued_bytes + metrics.dropped_bytes
        if accounted != metrics.emitted_bytes:
            raise InvariantViolation(
                f"tick {self.tick}: byte conservation broken, emitted {metrics.emitted_bytes} != "
                f"delivered + queued + dropped {accounted}"
            )
        for node_id, sent in self.forwarded_bytes.items():
            budget = self.budget_bytes(self.nodes[node_id])
            if sent > budget:
                raise InvariantViolation(
                    f"tick {self.tick}: node {node_id} forwarded {sent} > {budget} bytes"
                )
        for node in self.nodes.values():
            if node.alive == (node.energy <= 0):
                raise InvariantViolation(f"tick {self.tick}: node {node.id} alive={node.alive} at {node.energy} J")
            if energy_before is not None and node.energy > energy_before[node.id]:
                raise InvariantViolation(f"tick {self.tick}: energy of node {node.id} increased")

    def snapshot(self) -> str:
        """One line per node: id,x,y,energy,alive,load."""
        return "".join(
            f"{node.id},{node.position.x!r},{node.position.y!r},{node.energy!r},{int(node.alive)},{node.load!r}\n"
            for _, node in sorted(self.nodes.items())
        )


def step(world: World) -> World:
    return world.step()


def run(world: World, ticks: int) -> Metrics:
    for _ in range(ticks):
        world.step()
    return world.metrics
