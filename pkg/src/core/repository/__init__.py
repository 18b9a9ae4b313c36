from .experiment_repo import ExperimentRepo
from .prediction_repo import PredictionRepo
from .tracking_repo import TrackingRepo, parse_window
