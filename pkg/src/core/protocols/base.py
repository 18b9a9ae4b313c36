from dataclasses import dataclass
from enum import StrEnum
from typing import Sequence

from src.core.geometry import Point


class Mode(StrEnum):
    RBA = "rba"
    GREEDY = "greedy"
    PERIMETER = "perimeter"
    CLUSTER_HEAD = "cluster-head"
    DIRECT_TO_SINK = "direct-to-sink"
    DROP = "drop"


@dataclass(frozen=True, slots=True)
class Neighbor:
    node_id: int
    position: Point
    rba: float = 0.0


NeighborView = Sequence[Neighbor]


@dataclass(frozen=True, slots=True)
class PerimeterState:
    """Per-packet GPSR bookkeeping while in perimeter mode."""

    lp: Point
    lf: Point
    e0: tuple[int, int] | None = None
    prev_id: int | None = None
    prev_position: Point | None = None


@dataclass(frozen=True, slots=True)
class RoutingDecision:
    next_hop: int | None
    mode: Mode
    perimeter: PerimeterState | None = None

    def __post_init__(self):
        if (self.next_hop is None) != (self.mode is Mode.DROP):
            raise ValueError(f"next_hop must be None exactly when dropping, got {self.next_hop} / {self.mode}")


DROP = RoutingDecision(None, Mode.DROP)


def check_view(neighbors: NeighborView) -> None:
    seen = set()
    for neighbor in neighbors:
        if neighbor.node_id in seen:
            raise ValueError(f"duplicate neighbour id {neighbor.node_id}")
        if neighbor.rba < 0:
            raise ValueError(f"neighbour {neighbor.node_id} reports negative RBA {neighbor.rba}")
        seen.add(neighbor.node_id)
