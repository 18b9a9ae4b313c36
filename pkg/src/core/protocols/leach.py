"""LEACH cluster-head rotation: randomized self-election, nearest-head membership."""

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from src.core.geometry import Point, distance


@dataclass(frozen=True, slots=True)
class ClusterNode:
    node_id: int
    position: Point
    last_head_round: int | None = None


@dataclass(frozen=True)
class ClusterAssignment:
    round: int
    heads: tuple[int, ...]
    head_of: dict[int, int] = field(default_factory=dict)

    def is_head(self, node_id: int) -> bool:
        return self.head_of.get(node_id) == node_id


def epoch_length(p: float) -> int:
    return math.ceil(1.0 / p)


def election_threshold(p: float, round_index: int) -> float:
    return p / (1.0 - p * (round_index % epoch_length(p)))


def is_eligible(node: ClusterNode, round_index: int, p: float) -> bool:
    """A node that already served as head in the current epoch sits the rest of it out."""
    if node.last_head_round is None:
        return True
    epoch_start = round_index - round_index % epoch_length(p)
    return node.last_head_round < epoch_start


def nearest_head(position: Point, heads: Sequence[ClusterNode]) -> int | None:
    if not heads:
        return None
    return min(heads, key=lambda head: (distance(position, head.position), head.node_id)).node_id


def leach_round(
    nodes: Sequence[ClusterNode], round_index: int, p: float, rng: np.random.Generator
) -> ClusterAssignment:
    """
    Elects the cluster heads of one round and attaches every other node to its nearest head.

    Each eligible node, in id order, draws one uniform number and becomes head if
    it falls below p / (1 - p * (round mod ceil(1/p))). A round without heads
    returns an empty membership; its nodes send straight to the sink.

    Raises:
        ValueError: If p is not strictly between 0 and 1.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"LEACH head probability must lie in (0, 1), got {p}")

    threshold = election_threshold(p, round_index)
    ordered = sorted(nodes, key=lambda node: node.node_id)
    heads = [node for node in ordered if is_eligible(node, round_index, p) and rng.random() < threshold]

    head_of = {head.node_id: head.node_id for head in heads}
    if heads:
        for node in ordered:
            if node.node_id not in head_of:
                head_of[node.node_id] = nearest_head(node.position, heads)
    return ClusterAssignment(round_index, tuple(head.node_id for head in heads), head_of)
