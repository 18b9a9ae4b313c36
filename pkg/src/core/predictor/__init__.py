from .predictor import (
    PredictionTrace,
    PredictorParams,
    PredictorState,
    initial_state,
    measure_rba,
    predict_trace,
    replay,
    update_and_predict,
)
