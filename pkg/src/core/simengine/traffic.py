"""Per-source byte schedules: constant-rate synthetic load or replayed tracker payload sizes."""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from src.core.tracker import BlobSequenceSpec, TrackerParams, initial_window, probability_frames, track_sequence


@dataclass(frozen=True)
class TrafficPlan:
    sources: tuple[int, ...]
    packet_bytes: int
    rate_bytes: int = 0
    payloads: tuple[int, ...] = ()
    offsets: tuple[int, ...] = ()
    frames_per_tick: int = 1

    def frame_sizes(self, source_index: int, tick: int) -> list[int]:
        """Byte sizes the source hands to the network at this tick, one entry per frame."""
        if not self.payloads:
            return [self.rate_bytes] if self.rate_bytes > 0 else []
        base = self.offsets[source_index] + tick * self.frames_per_tick
        return [self.payloads[(base + j) % len(self.payloads)] for j in range(self.frames_per_tick)]

    def packets(self, source_index: int, tick: int) -> list[int]:
        sizes = []
        for frame_bytes in self.frame_sizes(source_index, tick):
            full, rest = divmod(frame_bytes, self.packet_bytes)
            sizes.extend([self.packet_bytes] * full)
            if rest:
                sizes.append(rest)
        return sizes


def source_count(n: int, fraction: float, explicit: int | None) -> int:
    if explicit is not None:
        return min(explicit, n)
    return min(n, max(1, math.ceil(fraction * n)))


def choose_sources(node_ids: Sequence[int], count: int, rng: np.random.Generator) -> tuple[int, ...]:
    picked = rng.choice(np.asarray(node_ids), size=count, replace=False)
    return tuple(sorted(int(node) for node in picked))


@lru_cache(maxsize=8)
def tracker_payloads(spec: BlobSequenceSpec, params: TrackerParams) -> tuple[int, ...]:
    """Compressed payload size of every frame of the synthetic sequence, computed once per process."""
    records = track_sequence(probability_frames(spec), initial_window(spec), params)
    return tuple(record.payload_bytes for record in records)


def synthetic_plan(sources: tuple[int, ...], rate_bytes: int, packet_bytes: int) -> TrafficPlan:
    return TrafficPlan(sources, packet_bytes, rate_bytes=rate_bytes)


def tracker_plan(
    sources: tuple[int, ...],
    payloads: tuple[int, ...],
    packet_bytes: int,
    frames_per_tick: int,
    rng: np.random.Generator,
) -> TrafficPlan:
    offsets = tuple(int(offset) for offset in rng.integers(0, len(payloads), size=len(sources)))
    return TrafficPlan(sources, packet_bytes, payloads=payloads, offsets=offsets, frames_per_tick=frames_per_tick)
