"""
GPSR baseline: greedy geographic forwarding with right-hand-rule perimeter recovery.

Perimeter mode walks the faces of the Gabriel subgraph of the unit-disk graph.
The per-packet state records where perimeter mode was entered (lp), where the
current face was entered on the lp-to-sink segment (lf) and the first edge taken
on that face (e0).
"""

import math
from typing import Callable, Hashable, Mapping, Sequence

import networkx as nx
import numpy as np

from src.core.geometry import Point, distance, segment_intersection
from src.core.protocols.base import DROP, Mode, Neighbor, PerimeterState, RoutingDecision

TWO_PI = 2.0 * math.pi
ANGLE_EPS = 1e-12


def gabriel_neighbors(position: Point, neighbors: Sequence[Neighbor]) -> list[Neighbor]:
    """
    Keeps the neighbours v for which no other neighbour lies strictly inside the circle with diameter uv.

    On a unit-disk graph every witness of an edge is a neighbour of both
    endpoints, so the test is local and symmetric.
    """
    if len(neighbors) < 2:
        return list(neighbors)
    coords = np.array([[n.position.x, n.position.y] for n in neighbors], dtype=np.float64)
    origin = np.array([position.x, position.y], dtype=np.float64)
    mids = (coords + origin) / 2.0
    radii_sq = np.sum((coords - origin) ** 2, axis=1) / 4.0
    # dist_sq[i, j] = |w_j - mid_i|^2
    dist_sq = np.sum((coords[np.newaxis, :, :] - mids[:, np.newaxis, :]) ** 2, axis=2)
    np.fill_diagonal(dist_sq, np.inf)
    blocked = np.any(dist_sq < radii_sq[:, np.newaxis], axis=1)
    return [neighbor for neighbor, is_blocked in zip(neighbors, blocked) if not is_blocked]


def planarize(graph: nx.Graph, positions: Mapping[Hashable, Point]) -> nx.Graph:
    """Gabriel subgraph of a unit-disk graph."""
    planar = nx.Graph()
    planar.add_nodes_from(graph.nodes)
    for node in graph.nodes:
        around = [Neighbor(other, positions[other]) for other in graph.neighbors(node)]
        for kept in gabriel_neighbors(positions[node], around):
            planar.add_edge(node, kept.node_id)
    return planar


def gpsr_greedy(sender: Point, sink: Point, neighbors: Sequence[Neighbor]) -> RoutingDecision | None:
    """
    Greedy step: the neighbour closest to the sink, if it is strictly closer than the sender.

    Returns:
        RoutingDecision | None: Mode greedy, or None at a local minimum (perimeter entry).
    """
    own = distance(sender, sink)
    best = min(neighbors, key=lambda n: (distance(n.position, sink), n.node_id), default=None)
    if best is None or distance(best.position, sink) >= own:
        return None
    return RoutingDecision(best.node_id, Mode.GREEDY)


def _angle(origin: Point, target: Point) -> float:
    return math.atan2(target.y - origin.y, target.x - origin.x)


def _next_counterclockwise(
    sender: Point, planar_neighbors: Sequence[Neighbor], reference: float, inclusive: bool
) -> Neighbor | None:
    """
    First neighbour met when sweeping counterclockwise from the reference bearing.

    With inclusive=False a neighbour exactly on the reference bearing is met last,
    so the edge a packet arrived on is only taken back at a dead end.
    """

    def sweep(neighbor: Neighbor) -> tuple[float, int]:
        delta = (_angle(sender, neighbor.position) - reference) % TWO_PI
        if not inclusive and delta < ANGLE_EPS:
            delta = TWO_PI
        return delta, neighbor.node_id

    return min(planar_neighbors, key=sweep, default=None)


def gpsr_perimeter(
    sender_id: int,
    sender: Point,
    sink: Point,
    planar_neighbors: Sequence[Neighbor],
    entry_state: PerimeterState | None,
) -> RoutingDecision:
    """
    One perimeter-mode hop by the right-hand rule.

    Args:
        sender_id (int): Id of the forwarding node.
        sender (Point): Its position.
        sink (Point): Sink position.
        planar_neighbors (Sequence[Neighbor]): Gabriel neighbours of the sender.
        entry_state (PerimeterState | None): None when the packet enters perimeter
            mode at this node, else the state carried by the packet.

    Returns:
        RoutingDecision: Mode perimeter with the updated state, or drop once the
        first edge of the current face comes round again.
    """
    if not planar_neighbors:
        return DROP

    if entry_state is None:
        state = PerimeterState(lp=sender, lf=sender)
        candidate = _next_counterclockwise(sender, planar_neighbors, _angle(sender, sink), inclusive=True)
    else:
        state = entry_state
        reference = _angle(sender, state.prev_position)
        candidate = _next_counterclockwise(sender, planar_neighbors, reference, inclusive=False)

    for _ in range(len(planar_neighbors)):
        crossing = segment_intersection(sender, candidate.position, state.lp, sink)
        if crossing is None or distance(crossing, sink) >= distance(state.lf, sink) - ANGLE_EPS:
            break
        # face change: continue on the face on the far side of the crossing edge
        state = PerimeterState(lp=state.lp, lf=crossing, e0=None)
        reference = _angle(sender, candidate.position)
        candidate = _next_counterclockwise(sender, planar_neighbors, reference, inclusive=False)

    edge = (sender_id, candidate.node_id)
    if state.e0 == edge:
        return DROP
    e0 = state.e0 if state.e0 is not None else edge
    next_state = PerimeterState(lp=state.lp, lf=state.lf, e0=e0, prev_id=sender_id, prev_position=sender)
    return RoutingDecision(candidate.node_id, Mode.PERIMETER, next_state)


def gpsr_next_hop(
    sender_id: int,
    sender: Point,
    sink: Point,
    neighbors: Sequence[Neighbor],
    planar_neighbors: Callable[[], Sequence[Neighbor]],
    state: PerimeterState | None,
) -> RoutingDecision:
    """
    Greedy/perimeter state machine for one hop.

    A packet in perimeter mode returns to greedy as soon as it reaches a node
    closer to the sink than the point where it entered perimeter mode. The
    planar neighbour set is only computed when perimeter mode needs it.
    """
    if state is not None and distance(sender, sink) < distance(state.lp, sink):
        state = None
    if state is None:
        decision = gpsr_greedy(sender, sink, neighbors)
        if decision is not None:
            return decision
    return gpsr_perimeter(sender_id, sender, sink, planar_neighbors(), state)


def route_gpsr(
    graph: nx.Graph,
    positions: Mapping[int, Point],
    source: int,
    target: int,
    max_hops: int = 1000,
) -> list[int] | None:
    """
    Routes one packet hop by hop on a static graph.

    Returns:
        list[int] | None: The node sequence from source to target, or None if the
        packet was dropped or ran out of hops.
    """
    planar = planarize(graph, positions)
    sink = positions[target]
    path = [source]
    current = source
    state: PerimeterState | None = None
    for _ in range(max_hops):
        if current == target:
            return path
        sender = positions[current]
        neighbors = [Neighbor(other, positions[other]) for other in sorted(graph.neighbors(current))]
        if any(n.node_id == target for n in neighbors):
            path.append(target)
            return path

        def planar_view(node: int = current) -> list[Neighbor]:
            return [Neighbor(other, positions[other]) for other in sorted(planar.neighbors(node))]

        decision = gpsr_next_hop(current, sender, sink, neighbors, planar_view, state)
        if decision.next_hop is None:
            return None
        state = decision.perimeter
        current = decision.next_hop
        path.append(current)
    return path if current == target else None
