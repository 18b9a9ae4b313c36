"""Binary PGM (P5) frame files."""

import re
from pathlib import Path

import numpy as np

from src.config import settings
from src.core.exceptions import DataIOError, FrameParseError
from src.utils import get_logger

logger = get_logger(__name__, settings.LOG_LEVEL, settings.LOG_FILE)

_WHITESPACE = b" \t\r\n\v\f"
_DIGITS = re.compile(rb"\d+")


class FramesClient:
    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def list_frames(self) -> list[Path]:
        """
        Lists the .pgm files of the directory in name order.

        Raises:
            DataIOError: If the directory does not exist or holds no frames.
        """
        if not self.directory.is_dir():
            raise DataIOError(f"frame directory {self.directory} does not exist")
        frames = sorted(self.directory.glob("*.pgm"))
        if not frames:
            raise DataIOError(f"no .pgm frames in {self.directory}")
        return frames

    def read_all(self) -> list[np.ndarray]:
        frames = [self.read(path) for path in self.list_frames()]
        logger.info(f"read {len(frames)} frame(s) from {self.directory}")
        return frames

    def read(self, path: str | Path) -> np.ndarray:
        path = Path(path)
        try:
            data = path.read_bytes()
        except OSError as error:
            raise DataIOError(f"cannot read {path}: {error.strerror or error}")
        return parse_pgm(data, str(path))

    def write(self, name: str, image: np.ndarray) -> Path:
        path = self.directory / name
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            path.write_bytes(encode_pgm(image))
        except OSError as error:
            raise DataIOError(f"cannot write {path}: {error.strerror or error}")
        return path

    def write_sequence(self, images) -> list[Path]:
        return [self.write(f"{index:05d}.pgm", image) for index, image in enumerate(images)]


def encode_pgm(image: np.ndarray) -> bytes:
    image = np.asarray(image)
    if image.ndim != 2 or image.dtype != np.uint8:
        raise ValueError(f"expected a 2D uint8 image, got {image.dtype} {image.shape}")
    height, width = image.shape
    return f"P5\n{width} {height}\n255\n".encode("ascii") + image.tobytes()


def _skip_space(data: bytes, offset: int) -> int:
    while offset < len(data):
        if data[offset] in _WHITESPACE:
            offset += 1
        elif data[offset] == ord("#"):
            while offset < len(data) and data[offset] not in b"\r\n":
                offset += 1
        else:
            break
    return offset


def _read_number(data: bytes, offset: int, path: str, what: str) -> tuple[int, int]:
    offset = _skip_space(data, offset)
    match = _DIGITS.match(data, offset)
    if match is None:
        raise FrameParseError(path, offset, f"expected {what}")
    end = match.end()
    if end < len(data) and data[end] not in _WHITESPACE:
        raise FrameParseError(path, end, f"unexpected byte after {what}")
    return int(match.group()), end


def parse_pgm(data: bytes, path: str = "<pgm>") -> np.ndarray:
    """
    Decodes an 8-bit binary PGM image.

    Raises:
        FrameParseError: Naming the byte offset of the first malformed byte.
    """
    if not data.startswith(b"P5"):
        raise FrameParseError(path, 0, "missing P5 magic number")
    offset = 2
    if offset >= len(data) or data[offset] not in _WHITESPACE + b"#":
        raise FrameParseError(path, offset, "expected whitespace after magic number")
    width, offset = _read_number(data, offset, path, "width")
    height, offset = _read_number(data, offset, path, "height")
    maxval, offset = _read_number(data, offset, path, "maxval")
    if width < 1 or height < 1:
        raise FrameParseError(path, offset, f"empty image {width}x{height}")
    if not 0 < maxval < 256:
        raise FrameParseError(path, offset, f"unsupported maxval {maxval}, only 8-bit frames are read")
    if offset >= len(data):
        raise FrameParseError(path, offset, "header ends before pixel data")
    offset += 1
    expected = width * height
    if len(data) - offset < expected:
        raise FrameParseError(path, len(data), f"pixel data truncated, need {expected} bytes from offset {offset}")
    pixels = np.frombuffer(data, dtype=np.uint8, count=expected, offset=offset)
    return pixels.reshape(height, width).copy()
