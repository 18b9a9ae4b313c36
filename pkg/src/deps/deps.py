from pathlib import Path

from src.core.clients import FramesClient
from src.core.repository import ExperimentRepo, PredictionRepo, TrackingRepo


def frames_client(directory: str | Path) -> FramesClient:
    return FramesClient(directory)


def tracking_repo(out_dir: str | Path) -> TrackingRepo:
    return TrackingRepo(out_dir=out_dir)


def prediction_repo() -> PredictionRepo:
    return PredictionRepo()


def experiment_repo(out_dir: str | Path) -> ExperimentRepo:
    return ExperimentRepo(out_dir=out_dir)
