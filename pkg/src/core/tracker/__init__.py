from .stream import HEADER, StreamHeader, encode_record, read_stream, write_stream
from .synthetic import BlobSequenceSpec, blob_centers, grayscale_frames, initial_window, probability_frames
from .tracker import (
    HEADER_BYTES,
    Histogram,
    Moments,
    ProbabilityFrame,
    Rect,
    TrackerParams,
    TrackRecord,
    TrackWindow,
    back_project,
    camshift_step,
    compute_histogram,
    mean_shift,
    payload_size,
    track_sequence,
    window_moments,
    window_side,
)
