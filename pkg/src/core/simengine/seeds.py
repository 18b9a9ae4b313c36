"""Seed derivation. Every generator in a run descends from the base seed through mix64."""

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

# Streams 0..2 belong to the protocols (PROTOCOL_ORDER); topology and traffic share one stream
# so every protocol of a trial sees the same nodes and the same sources.
TOPOLOGY_STREAM = 0x7F


def splitmix64(value: int) -> int:
    z = (value + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix64(base: int, *parts: int) -> int:
    """Folds each part into the running hash with one SplitMix64 round."""
    value = splitmix64(base & MASK64)
    for part in parts:
        value = splitmix64(value ^ (part & MASK64))
    return value


def generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))
