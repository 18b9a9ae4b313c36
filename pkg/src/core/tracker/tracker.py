"""
CamShift tracking on single-channel probability images.

Mean shift climbs to the mode of the probability mass inside a search window;
after convergence the window is resized from the window's 0th moment and
carried over to the next frame.
"""

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from src.core.exceptions import DegenerateModelError, WindowGeometryError

HEADER_BYTES = 16


def _round_half_up(value: float) -> int:
    return math.floor(value + 0.5)


@dataclass(frozen=True, slots=True)
class Rect:
    """Integer pixel rectangle covering columns x..x+w-1 and rows y..y+h-1."""

    x: int
    y: int
    w: int
    h: int

    @property
    def center(self) -> tuple[float, float]:
        return self.x + (self.w - 1) / 2.0, self.y + (self.h - 1) / 2.0

    def clip(self, width: int, height: int) -> "Rect | None":
        x0, y0 = max(self.x, 0), max(self.y, 0)
        x1, y1 = min(self.x + self.w, width), min(self.y + self.h, height)
        if x1 <= x0 or y1 <= y0:
            return None
        return Rect(x0, y0, x1 - x0, y1 - y0)

    def inside(self, width: int, height: int) -> bool:
        if self.w < 1 or self.h < 1:
            return False
        return self.x >= 0 and self.y >= 0 and self.x + self.w <= width and self.y + self.h <= height

    def scaled(self, factor: float) -> "Rect":
        cx, cy = self.center
        w = max(1, _round_half_up(self.w * factor))
        h = max(1, _round_half_up(self.h * factor))
        return Rect(_round_half_up(cx - (w - 1) / 2.0), _round_half_up(cy - (h - 1) / 2.0), w, h)

    @staticmethod
    def place(cx: float, cy: float, w: int, h: int, width: int, height: int) -> "Rect":
        """Centres a w x h rectangle on (cx, cy) and slides it back inside the frame, keeping its size."""
        w, h = min(w, width), min(h, height)
        x = min(max(_round_half_up(cx - (w - 1) / 2.0), 0), width - w)
        y = min(max(_round_half_up(cy - (h - 1) / 2.0), 0), height - h)
        return Rect(x, y, w, h)


@dataclass(frozen=True, eq=False)
class ProbabilityFrame:
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
            raise ValueError(f"probability frame must be a non-empty 2D grid, got shape {values.shape}")
        if values.min() < 0.0 or values.max() > 1.0:
            raise ValueError("probability values must lie in [0, 1]")
        object.__setattr__(self, "values", values)

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class Histogram:
    bins: np.ndarray

    def __post_init__(self):
        bins = np.asarray(self.bins, dtype=np.float64)
        if bins.ndim != 1 or bins.size < 2:
            raise ValueError("histogram needs at least 2 bins")
        if bins.min() < 0:
            raise ValueError("histogram counts must be non-negative")
        object.__setattr__(self, "bins", bins)

    @property
    def bin_count(self) -> int:
        return self.bins.size


@dataclass(frozen=True, slots=True)
class Moments:
    m00: float
    cx: float
    cy: float


@dataclass(frozen=True, slots=True)
class TrackWindow:
    cx: float
    cy: float
    rect: Rect
    m00: float = 0.0
    iterations: int = 0

    @property
    def w(self) -> int:
        return self.rect.w

    @property
    def h(self) -> int:
        return self.rect.h

    @property
    def lost(self) -> bool:
        return self.iterations == 0

    @classmethod
    def from_rect(cls, rect: Rect) -> "TrackWindow":
        cx, cy = rect.center
        return cls(cx, cy, rect)


@dataclass(frozen=True, slots=True)
class TrackRecord:
    frame_index: int
    window: TrackWindow
    payload_bytes: int

    @property
    def lost(self) -> bool:
        return self.window.lost


@dataclass(frozen=True, slots=True)
class TrackerParams:
    bins: int = 16
    min_window: int = 8
    threshold: float = 1.0
    max_iter: int = 20
    roi_margin: float = 1.2
    min_intensity: int = 32
    metadata_only: bool = False

    def __post_init__(self):
        if self.bins < 2 or self.bins > 256:
            raise ValueError(f"bins must be in [2, 256], got {self.bins}")
        if self.min_window < 1:
            raise ValueError(f"min_window must be >= 1, got {self.min_window}")
        if not self.threshold > 0:
            raise ValueError(f"threshold must be positive, got {self.threshold}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.roi_margin < 1.0:
            raise ValueError(f"roi_margin must be >= 1, got {self.roi_margin}")


def compute_histogram(image: np.ndarray, rect: Rect, bin_count: int = 16, min_intensity: int = 0) -> Histogram:
    """Intensity histogram of the pixels in rect, ignoring pixels darker than min_intensity."""
    image = np.asarray(image, dtype=np.uint8)
    clipped = rect.clip(image.shape[1], image.shape[0])
    if clipped is None:
        raise WindowGeometryError(f"{rect} does not intersect a {image.shape[1]}x{image.shape[0]} frame")
    patch = image[clipped.y : clipped.y + clipped.h, clipped.x : clipped.x + clipped.w]
    pixels = patch[patch >= min_intensity].astype(np.intp)
    return Histogram(np.bincount(pixels * bin_count // 256, minlength=bin_count))


def back_project(image: np.ndarray, target_hist: Histogram, region: Rect | None = None) -> ProbabilityFrame:
    """
    Maps every pixel to the max-normalised histogram count of its intensity bin.

    Args:
        image (np.ndarray): 8-bit grayscale frame.
        target_hist (Histogram): Target model.
        region (Rect | None): When given, pixels outside it score 0.

    Returns:
        ProbabilityFrame: Same dimensions as the image, values in [0, 1].

    Raises:
        DegenerateModelError: If the histogram has no positive bin.
    """
    peak = target_hist.bins.max()
    if peak <= 0:
        raise DegenerateModelError("target histogram is all zero")
    image = np.asarray(image, dtype=np.uint8)
    lookup = target_hist.bins / peak
    values = lookup[image.astype(np.intp) * target_hist.bin_count // 256]
    if region is not None:
        mask = np.zeros(values.shape, dtype=bool)
        clipped = region.clip(image.shape[1], image.shape[0])
        if clipped is not None:
            mask[clipped.y : clipped.y + clipped.h, clipped.x : clipped.x + clipped.w] = True
        values = np.where(mask, values, 0.0)
    return ProbabilityFrame(values)


def window_moments(frame: ProbabilityFrame, window: Rect) -> Moments:
    """
    0th moment and centroid of the probability mass inside the clipped window.

    Sums are exactly rounded (math.fsum), so the result does not depend on
    summation order. A massless window reports its own centre.
    """
    clipped = window.clip(frame.width, frame.height)
    if clipped is None:
        raise WindowGeometryError(f"{window} does not intersect a {frame.width}x{frame.height} frame")
    patch = frame.values[clipped.y : clipped.y + clipped.h, clipped.x : clipped.x + clipped.w]
    m00 = math.fsum(patch.ravel())
    if m00 <= 0.0:
        cx, cy = clipped.center
        return Moments(0.0, cx, cy)
    xs = np.arange(clipped.x, clipped.x + clipped.w, dtype=np.float64)
    ys = np.arange(clipped.y, clipped.y + clipped.h, dtype=np.float64)
    m10 = math.fsum((patch * xs[np.newaxis, :]).ravel())
    m01 = math.fsum((patch * ys[:, np.newaxis]).ravel())
    return Moments(m00, m10 / m00, m01 / m00)


def mean_shift(frame: ProbabilityFrame, start: Rect, threshold: float = 1.0, max_iter: int = 20) -> TrackWindow:
    """
    Recentres the window on its centroid until the centroid moves less than threshold pixels.

    Returns the start window with iterations = 0 when it holds no mass.
    """
    if not threshold > 0 or max_iter < 1:
        raise ValueError("threshold must be positive and max_iter >= 1")
    rect = start.clip(frame.width, frame.height)
    if rect is None:
        raise WindowGeometryError(f"{start} does not intersect a {frame.width}x{frame.height} frame")

    last: Moments | None = None
    iterations = 0
    while iterations < max_iter:
        moments = window_moments(frame, rect)
        if moments.m00 <= 0.0:
            break
        iterations += 1
        last = moments
        wx, wy = rect.center
        rect = Rect.place(moments.cx, moments.cy, rect.w, rect.h, frame.width, frame.height)
        if math.hypot(moments.cx - wx, moments.cy - wy) < threshold:
            break

    if last is None:
        cx, cy = start.center
        return TrackWindow(cx, cy, start, 0.0, 0)
    return TrackWindow(last.cx, last.cy, rect, last.m00, iterations)


def window_side(m00: float, min_window: int, frame_side: int) -> int:
    side = math.ceil(2.0 * math.sqrt(m00))
    return min(max(side, min_window), frame_side)


def camshift_step(frame: ProbabilityFrame, prev: TrackWindow, params: TrackerParams = TrackerParams()) -> TrackWindow:
    shifted = mean_shift(frame, prev.rect, params.threshold, params.max_iter)
    if shifted.lost:
        return TrackWindow(prev.cx, prev.cy, prev.rect, 0.0, 0)
    side = window_side(shifted.m00, params.min_window, min(frame.width, frame.height))
    rect = Rect.place(shifted.cx, shifted.cy, side, side, frame.width, frame.height)
    return TrackWindow(shifted.cx, shifted.cy, rect, shifted.m00, shifted.iterations)


def payload_size(window: TrackWindow, metadata_only: bool) -> int:
    return HEADER_BYTES if metadata_only else HEADER_BYTES + window.w * window.h


def track_sequence(
    frames: Iterable[ProbabilityFrame | np.ndarray],
    init_window: Rect,
    params: TrackerParams = TrackerParams(),
    target_hist: Histogram | None = None,
) -> list[TrackRecord]:
    """
    Tracks a target across successive frames, feeding each result into the next search.

    Frames are either probability frames or 8-bit grayscale images. For grayscale
    input the target histogram is taken from init_window on frame 0 (unless
    given) and each frame is back-projected only inside the current window
    scaled by params.roi_margin.

    Args:
        frames (Iterable): Frame sequence, at least one frame.
        init_window (Rect): Initial search window, inside frame 0.
        params (TrackerParams): Tracker settings.
        target_hist (Histogram | None): Optional precomputed target model.

    Returns:
        list[TrackRecord]: One record per frame with its payload size.
    """
    records: list[TrackRecord] = []
    window = TrackWindow.from_rect(init_window)
    for index, frame in enumerate(frames):
        if isinstance(frame, ProbabilityFrame):
            height, width = frame.values.shape
        else:
            height, width = np.asarray(frame).shape
        if index == 0 and not init_window.inside(width, height):
            raise WindowGeometryError(f"initial window {init_window} is not inside the {width}x{height} frame")

        if isinstance(frame, ProbabilityFrame):
            probability = frame
        else:
            if target_hist is None:
                target_hist = compute_histogram(frame, init_window, params.bins, params.min_intensity)
            probability = back_project(frame, target_hist, region=window.rect.scaled(params.roi_margin))

        window = camshift_step(probability, window, params)
        records.append(TrackRecord(index, window, payload_size(window, params.metadata_only)))

    if not records:
        raise ValueError("track_sequence needs at least one frame")
    return records
