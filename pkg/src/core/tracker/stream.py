"""Byte-exact compressed stream: a 16-byte little-endian header per frame, then the ROI pixels."""

import struct
from dataclasses import dataclass
from typing import BinaryIO, Iterable

import numpy as np

from src.core.tracker.tracker import HEADER_BYTES, ProbabilityFrame, Rect, TrackRecord

HEADER = struct.Struct("<IHHHHHH")
FLAG_LOST = 0x1
FLAG_METADATA_ONLY = 0x2


@dataclass(frozen=True, slots=True)
class StreamHeader:
    frame_index: int
    cx: int
    cy: int
    w: int
    h: int
    flags: int

    @property
    def rect(self) -> Rect:
        return Rect(self.cx - self.w // 2, self.cy - self.h // 2, self.w, self.h)

    @property
    def lost(self) -> bool:
        return bool(self.flags & FLAG_LOST)

    @property
    def metadata_only(self) -> bool:
        return bool(self.flags & FLAG_METADATA_ONLY)


def extract_roi(frame: ProbabilityFrame | np.ndarray, rect: Rect) -> np.ndarray:
    if isinstance(frame, ProbabilityFrame):
        pixels = np.rint(frame.values * 255.0).astype(np.uint8)
    else:
        pixels = np.asarray(frame, dtype=np.uint8)
    return pixels[rect.y : rect.y + rect.h, rect.x : rect.x + rect.w]


def encode_record(record: TrackRecord, frame: ProbabilityFrame | np.ndarray, metadata_only: bool = False) -> bytes:
    rect = record.window.rect
    flags = (FLAG_LOST if record.lost else 0) | (FLAG_METADATA_ONLY if metadata_only else 0)
    header = HEADER.pack(record.frame_index, rect.x + rect.w // 2, rect.y + rect.h // 2, rect.w, rect.h, flags, 0)
    if metadata_only:
        return header
    return header + extract_roi(frame, rect).tobytes()


def write_stream(
    sink: BinaryIO,
    records: Iterable[TrackRecord],
    frames: Iterable[ProbabilityFrame | np.ndarray],
    metadata_only: bool = False,
) -> int:
    """Writes one encoded record per frame and returns the number of bytes written."""
    written = 0
    for record, frame in zip(records, frames, strict=True):
        chunk = encode_record(record, frame, metadata_only)
        if len(chunk) != record.payload_bytes:
            raise ValueError(
                f"frame {record.frame_index}: encoded {len(chunk)} bytes, record says {record.payload_bytes}"
            )
        sink.write(chunk)
        written += len(chunk)
    return written


def read_stream(data: bytes) -> list[tuple[StreamHeader, bytes]]:
    records = []
    offset = 0
    while offset < len(data):
        if offset + HEADER_BYTES > len(data):
            raise ValueError(f"truncated header at byte offset {offset}")
        header = StreamHeader(*HEADER.unpack_from(data, offset)[:6])
        offset += HEADER_BYTES
        size = 0 if header.metadata_only else header.w * header.h
        if offset + size > len(data):
            raise ValueError(f"truncated ROI for frame {header.frame_index} at byte offset {offset}")
        records.append((header, data[offset : offset + size]))
        offset += size
    return records
