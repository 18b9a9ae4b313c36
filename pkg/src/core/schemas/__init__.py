from .experiment import (
    PROTOCOL_ORDER,
    EnergySection,
    ExperimentConfig,
    ExperimentSection,
    GpsrSection,
    LeachSection,
    NetworkSection,
    PredictorSection,
    Protocol,
    SyntheticSection,
    TrackerSection,
    TrafficMode,
    TrafficSection,
    load_config,
    parse_flat_config,
    validate_config,
)
from .results import (
    AliveRow,
    AliveSummaryRow,
    DeliveredRow,
    PredictionRow,
    Row,
    SummaryRow,
    TrackRow,
    TruthRow,
)
from .outcomes import FramesOutcome, PredictionOutcome, SimulationOutcome, TrackOutcome
