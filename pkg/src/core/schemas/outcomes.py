from pydantic import BaseModel


class FramesOutcome(BaseModel):
    frames: int
    directory: str
    initial_window: tuple[int, int, int, int]


class TrackOutcome(BaseModel):
    records: int
    lost_frames: int
    compressed_bytes: int
    raw_bytes: int
    track_csv: str
    stream: str

    @property
    def ratio(self) -> float:
        return self.compressed_bytes / self.raw_bytes if self.raw_bytes else 0.0


class PredictionOutcome(BaseModel):
    steps: int
    output: str | None = None


class SimulationOutcome(BaseModel):
    trials: int
    files: list[str]
