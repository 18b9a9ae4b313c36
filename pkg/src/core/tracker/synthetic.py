"""Synthetic moving Gaussian blob sequences with known ground truth."""

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from src.core.tracker.tracker import ProbabilityFrame, Rect


@dataclass(frozen=True, slots=True)
class BlobSequenceSpec:
    width: int = 128
    height: int = 128
    frames: int = 100
    sigma: float = 4.0
    growth: float = 0.0
    speed: float = 2.0
    heading_deg: float = 45.0
    start_x: float | None = None
    start_y: float | None = None
    peak: int = 255
    background: int = 0
    noise: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.width < 8 or self.height < 8:
            raise ValueError("frames must be at least 8x8")
        if self.frames < 1:
            raise ValueError("at least one frame is required")
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if not 0 <= self.background < self.peak <= 255:
            raise ValueError("need 0 <= background < peak <= 255")

    def sigma_at(self, index: int) -> float:
        return self.sigma + self.growth * index

    @property
    def margin(self) -> float:
        return min(3.0 * self.sigma_at(self.frames - 1) + 2.0, (min(self.width, self.height) - 1) / 2.0)


def blob_centers(spec: BlobSequenceSpec) -> list[tuple[float, float]]:
    """Ground-truth centres; the blob moves at constant speed and reflects off the margin."""
    lo = spec.margin
    hi_x = spec.width - 1 - spec.margin
    hi_y = spec.height - 1 - spec.margin
    x = spec.start_x if spec.start_x is not None else (spec.width - 1) / 2.0
    y = spec.start_y if spec.start_y is not None else (spec.height - 1) / 2.0
    vx = spec.speed * math.cos(math.radians(spec.heading_deg))
    vy = spec.speed * math.sin(math.radians(spec.heading_deg))

    centers = [(x, y)]
    for _ in range(spec.frames - 1):
        x, vx = _reflect(x + vx, vx, lo, hi_x)
        y, vy = _reflect(y + vy, vy, lo, hi_y)
        centers.append((x, y))
    return centers


def _reflect(position: float, velocity: float, lo: float, hi: float) -> tuple[float, float]:
    if hi <= lo:
        return (lo + hi) / 2.0, 0.0
    if position < lo:
        return 2 * lo - position, -velocity
    if position > hi:
        return 2 * hi - position, -velocity
    return position, velocity


def _gaussian(spec: BlobSequenceSpec, index: int, center: tuple[float, float]) -> np.ndarray:
    ys, xs = np.mgrid[0 : spec.height, 0 : spec.width].astype(np.float64)
    sigma = spec.sigma_at(index)
    return np.exp(-((xs - center[0]) ** 2 + (ys - center[1]) ** 2) / (2.0 * sigma * sigma))


def probability_frames(spec: BlobSequenceSpec) -> Iterator[ProbabilityFrame]:
    for index, center in enumerate(blob_centers(spec)):
        yield ProbabilityFrame(_gaussian(spec, index, center))


def grayscale_frames(spec: BlobSequenceSpec) -> Iterator[np.ndarray]:
    rng = np.random.default_rng(spec.seed)
    for index, center in enumerate(blob_centers(spec)):
        image = spec.background + (spec.peak - spec.background) * _gaussian(spec, index, center)
        if spec.noise > 0:
            image = image + rng.normal(0.0, spec.noise, image.shape)
        yield np.clip(np.rint(image), 0, 255).astype(np.uint8)


def initial_window(spec: BlobSequenceSpec) -> Rect:
    """Square window spanning +-2.5 sigma around the first centre."""
    x, y = blob_centers(spec)[0]
    side = 2 * math.ceil(2.5 * spec.sigma_at(0))
    return Rect.place(x, y, side, side, spec.width, spec.height)
