from dataclasses import dataclass

import networkx as nx
import numpy as np

from src.core.geometry import Point

SINK_ID = -1


@dataclass(frozen=True)
class Topology:
    """Node positions and the unit-disk adjacency. The sink is vertex SINK_ID of the graph."""

    positions: dict[int, Point]
    sink: Point
    radio_range: float
    graph: nx.Graph

    @property
    def node_ids(self) -> list[int]:
        return [node for node in sorted(self.graph.nodes) if node != SINK_ID]


def unit_disk_graph(positions: dict[int, Point], radio_range: float) -> nx.Graph:
    ids = sorted(positions)
    graph = nx.Graph()
    graph.add_nodes_from(ids)
    if len(ids) < 2:
        return graph
    coords = np.array([[positions[i].x, positions[i].y] for i in ids], dtype=np.float64)
    deltas = coords[:, np.newaxis, :] - coords[np.newaxis, :, :]
    within = np.sum(deltas**2, axis=2) <= radio_range * radio_range
    rows, cols = np.nonzero(np.triu(within, k=1))
    graph.add_edges_from((ids[i], ids[j]) for i, j in zip(rows.tolist(), cols.tolist()))
    return graph


def build_topology(n: int, width: float, height: float, radio_range: float, rng: np.random.Generator) -> Topology:
    """
    Scatters n nodes uniformly over the area and puts the sink at the midpoint of its bottom edge.

    Disconnected topologies are returned as they are.
    """
    if n < 1:
        raise ValueError(f"node count must be >= 1, got {n}")
    if width <= 0 or height <= 0 or radio_range <= 0:
        raise ValueError("area and radio range must be positive")
    xs = rng.uniform(0.0, width, size=n)
    ys = rng.uniform(0.0, height, size=n)
    sink = Point(width / 2.0, 0.0)
    positions = {i: Point(float(xs[i]), float(ys[i])) for i in range(n)}
    positions[SINK_ID] = sink
    return Topology(positions, sink, radio_range, unit_disk_graph(positions, radio_range))
