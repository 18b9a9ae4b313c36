"""Routing policies plugging the protocol decision functions into the simulator."""

from abc import ABC, abstractmethod

from src.config import settings
from src.core.protocols import (
    ClusterAssignment,
    ClusterNode,
    Mode,
    RoutingDecision,
    gpsr_next_hop,
    leach_round,
    nearest_head,
    rba_select,
)
from src.core.schemas import ExperimentConfig, Protocol
from src.core.simengine.topology import SINK_ID
from src.core.simengine.world import NodeState, Packet, World
from src.utils import get_logger

logger = get_logger(__name__, settings.LOG_LEVEL, settings.LOG_FILE)

DIRECT_TO_SINK = RoutingDecision(SINK_ID, Mode.DIRECT_TO_SINK)


class RoutingPolicy(ABC):
    protocol: Protocol

    def start_tick(self, world: World) -> None:
        pass

    @abstractmethod
    def next_hop(self, world: World, node: NodeState, packet: Packet) -> RoutingDecision:
        ...

    def on_deaths(self, world: World, dead: list[int]) -> None:
        pass


class RbaPolicy(RoutingPolicy):
    """Probes every neighbour for its predicted RBA before each forwarding decision."""

    protocol = Protocol.RBA

    def next_hop(self, world: World, node: NodeState, packet: Packet) -> RoutingDecision:
        if world.sink_adjacent(node.id):
            return DIRECT_TO_SINK
        view = world.neighbor_view(node.id)
        # probe out, response back
        world.charge_control(node.id, len(view))
        for neighbor in view:
            world.charge_control(neighbor.node_id, 1)
        return rba_select(node.position, world.sink, view, exclude=frozenset(packet.hops))


class GpsrPolicy(RoutingPolicy):
    protocol = Protocol.GPSR

    def __init__(self, beacon_ticks: int):
        self.beacon_ticks = beacon_ticks

    def start_tick(self, world: World) -> None:
        if world.tick % self.beacon_ticks == 0:
            for node in world.alive_nodes():
                world.charge_control(node.id, 1)

    def next_hop(self, world: World, node: NodeState, packet: Packet) -> RoutingDecision:
        if world.sink_adjacent(node.id):
            return DIRECT_TO_SINK
        decision = gpsr_next_hop(
            node.id,
            node.position,
            world.sink,
            world.alive_neighbors(node.id),
            lambda: world.planar_neighbors(node.id),
            packet.perimeter,
        )
        if decision.mode is Mode.PERIMETER and packet.perimeter is None:
            logger.debug(f"tick {world.tick}: packet {packet.id} enters perimeter mode at node {node.id}")
        return decision


class LeachPolicy(RoutingPolicy):
    """Rotating cluster heads; members send to their head, heads send straight to the sink."""

    protocol = Protocol.LEACH

    def __init__(self, p: float, round_ticks: int):
        self.p = p
        self.round_ticks = round_ticks
        self.assignment: ClusterAssignment | None = None

    def start_tick(self, world: World) -> None:
        if world.tick % self.round_ticks == 0:
            self.elect(world)

    def elect(self, world: World) -> ClusterAssignment:
        round_index = world.tick // self.round_ticks
        candidates = [ClusterNode(node.id, node.position, node.last_head_round) for node in world.alive_nodes()]
        self.assignment = leach_round(candidates, round_index, self.p, world.rng)
        for head in self.assignment.heads:
            world.nodes[head].last_head_round = round_index
            world.charge_control(head, 1)
        for member, head in self.assignment.head_of.items():
            if member != head:
                world.charge_control(member, 1)
        logger.debug(f"tick {world.tick}: LEACH round {round_index} elected {len(self.assignment.heads)} head(s)")
        return self.assignment

    def next_hop(self, world: World, node: NodeState, packet: Packet) -> RoutingDecision:
        assignment = self.assignment
        if assignment is None or assignment.is_head(node.id):
            return DIRECT_TO_SINK
        head = assignment.head_of.get(node.id)
        if head is None or not world.nodes[head].alive:
            head = self._rejoin(world, node)
        if head is None:
            return DIRECT_TO_SINK
        return RoutingDecision(head, Mode.CLUSTER_HEAD)

    def _rejoin(self, world: World, node: NodeState) -> int | None:
        survivors = [
            ClusterNode(head, world.nodes[head].position)
            for head in self.assignment.heads
            if world.nodes[head].alive
        ]
        head = nearest_head(node.position, survivors)
        if head is not None:
            self.assignment.head_of[node.id] = head
            world.charge_control(node.id, 1)
        return head


def make_policy(protocol: Protocol, config: ExperimentConfig) -> RoutingPolicy:
    if protocol is Protocol.RBA:
        return RbaPolicy()
    if protocol is Protocol.GPSR:
        return GpsrPolicy(config.ticks(config.gpsr.beacon_interval_s))
    if protocol is Protocol.LEACH:
        return LeachPolicy(config.leach.p, config.ticks(config.leach.round_s))
    raise ValueError(f"unknown protocol {protocol}")
