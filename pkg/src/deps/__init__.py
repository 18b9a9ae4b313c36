from .deps import experiment_repo, frames_client, prediction_repo, tracking_repo
