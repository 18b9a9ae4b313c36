"""Bandwidth-balancing next hop: the forward-region neighbour with the highest predicted RBA."""

from src.core.geometry import Point, distance, in_forward_region
from src.core.protocols.base import DROP, Mode, Neighbor, NeighborView, RoutingDecision, check_view


def rba_select(
    sender: Point,
    sink: Point,
    neighbors: NeighborView,
    exclude: frozenset[int] | set[int] = frozenset(),
) -> RoutingDecision:
    """
    Chooses the next hop among the probe responses of the neighbours.

    Neighbours behind the perpendicular through the sender, and neighbours the
    packet already visited, are ignored. Among the rest the highest predicted RBA
    wins, ties going to the neighbour nearer the sink and then to the lower id.
    With no such candidate the packet falls back to greedy progress over all
    neighbours, visited ones included, and is dropped if no neighbour is closer
    to the sink than the sender. Every RBA hop reaches a new node and every
    greedy hop gets strictly closer to the sink, so a packet cannot cycle.

    Args:
        sender (Point): Position of the forwarding node.
        sink (Point): Position of the sink.
        neighbors (NeighborView): (id, position, predicted RBA) of each neighbour.
        exclude (set[int]): Ids already on the packet's hop trace.

    Returns:
        RoutingDecision: Mode rba, greedy (fallback) or drop.

    Raises:
        ValueError: If the view repeats an id or reports a negative RBA.
    """
    check_view(neighbors)
    if not neighbors:
        return DROP

    forward = [n for n in neighbors if n.node_id not in exclude and in_forward_region(n.position, sender, sink)]
    if forward:
        best = min(forward, key=lambda n: (-n.rba, distance(n.position, sink), n.node_id))
        return RoutingDecision(best.node_id, Mode.RBA)

    fallback = _closest_to_sink(neighbors, sink)
    if distance(fallback.position, sink) < distance(sender, sink):
        return RoutingDecision(fallback.node_id, Mode.GREEDY)
    return DROP


def _closest_to_sink(neighbors: NeighborView, sink: Point) -> Neighbor:
    return min(neighbors, key=lambda n: (distance(n.position, sink), n.node_id))
