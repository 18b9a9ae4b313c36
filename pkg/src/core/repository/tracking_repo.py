from src.config import settings
from src.core.clients import FramesClient
from src.core.crud import track_table, truth_table
from src.core.exceptions import DataIOError, DegenerateModelError, ValidationFailed, WindowGeometryError, WmsnError
from src.core.repository.repository import Repository
from src.core.schemas import FramesOutcome, TrackOutcome, TrackRow, TruthRow
from src.core.tracker import (
    BlobSequenceSpec,
    Rect,
    TrackerParams,
    TrackRecord,
    blob_centers,
    grayscale_frames,
    initial_window,
    track_sequence,
    write_stream,
)
from src.utils import get_logger

logger = get_logger(__name__, settings.LOG_LEVEL, settings.LOG_FILE)


class TrackingRepo(Repository):
    def __to_rows(self, records: list[TrackRecord]) -> list[TrackRow]:
        """
        Converts tracker output into track-log rows.

        Args:
            records (list[TrackRecord]): One record per frame.

        Returns:
            list[TrackRow]: Rows in frame order.
        """
        return [
            TrackRow(
                frame=record.frame_index,
                cx=record.window.cx,
                cy=record.window.cy,
                w=record.window.w,
                h=record.window.h,
                m00=record.window.m00,
                iters=record.window.iterations,
                lost=record.lost,
                payload_bytes=record.payload_bytes,
            )
            for record in records
        ]

    def generate_frames(self, spec: BlobSequenceSpec, frames_client: FramesClient) -> FramesOutcome:
        """
        Writes a synthetic moving-blob sequence as PGM frames plus its ground truth.

        Args:
            spec (BlobSequenceSpec): Sequence description.
            frames_client (FramesClient): Client bound to the target directory.

        Returns:
            FramesOutcome: Frame count, directory and a suggested initial window.
        """
        logger.info(f"generating {spec.frames} frame(s) of {spec.width}x{spec.height} into {frames_client.directory}")
        frames_client.write_sequence(grayscale_frames(spec))
        truth = [TruthRow(frame=index, x=x, y=y) for index, (x, y) in enumerate(blob_centers(spec))]
        truth_table.write(frames_client.directory / "truth.csv", truth)
        window = initial_window(spec)
        return FramesOutcome(
            frames=spec.frames,
            directory=str(frames_client.directory),
            initial_window=(window.x, window.y, window.w, window.h),
        )

    def track(
        self,
        frames_client: FramesClient,
        init_window: Rect,
        params: TrackerParams,
    ) -> TrackOutcome:
        """
        Tracks the target through a PGM sequence and writes the track log and compressed stream.

        Args:
            frames_client (FramesClient): Client bound to the frame directory.
            init_window (Rect): Initial search window on frame 0.
            params (TrackerParams): Tracker settings, metadata_only included.

        Returns:
            TrackOutcome: Byte counts of the compressed and the raw stream.

        Raises:
            DataIOError: Missing or malformed frames.
            ValidationFailed: Initial window outside frame 0 or with an empty target model.
        """
        track_path = self.output_path("track.csv")
        stream_path = self.output_path("stream.bin")
        try:
            frames = frames_client.read_all()
            logger.info(f"tracking {len(frames)} frame(s) from window {init_window}")
            records = track_sequence(frames, init_window, params)
            track_table.write(track_path, self.__to_rows(records))
            with open(stream_path, "wb") as sink:
                compressed = write_stream(sink, records, frames, params.metadata_only)

        except WmsnError:
            raise

        except (WindowGeometryError, DegenerateModelError) as error:
            logger.error(f"tracking rejected: {error}")
            raise ValidationFailed(str(error))

        except OSError as error:
            logger.error(f"cannot write tracking output: {error}")
            raise DataIOError(f"cannot write {stream_path}: {error.strerror or error}")

        else:
            raw = sum(frame.size for frame in frames)
            lost = sum(1 for record in records if record.lost)
            logger.info(f"wrote {track_path} and {stream_path}: {compressed} of {raw} raw bytes, {lost} lost frame(s)")
            return TrackOutcome(
                records=len(records),
                lost_frames=lost,
                compressed_bytes=compressed,
                raw_bytes=raw,
                track_csv=str(track_path),
                stream=str(stream_path),
            )


def parse_window(text: str) -> Rect:
    """Parses ``x,y,w,h``."""
    parts = [part.strip() for part in text.split(",")]
    try:
        x, y, w, h = (int(part) for part in parts)
    except ValueError:
        raise ValidationFailed(f"window must read x,y,w,h with integers, got {text!r}")
    if w < 1 or h < 1:
        raise ValidationFailed(f"window needs positive width and height, got {text!r}")
    return Rect(x, y, w, h)

