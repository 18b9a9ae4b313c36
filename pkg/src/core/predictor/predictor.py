"""
Per-node residual-bandwidth-ability (RBA) predictor.

Each node keeps only two numbers about its past: the potential acceleration of
its RBA and the variance of that acceleration. Every tick the measured RBA is
blended into them and the RBA of the next tick is extrapolated.
"""

import math
from dataclasses import dataclass, replace
from typing import Iterable

from src.core.exceptions import PredictorDomainError


@dataclass(frozen=True, slots=True)
class PredictorParams:
    epsilon: float = 0.01
    dt: float = 1.0
    a0: float = 0.0
    v0: float = 1.0

    def __post_init__(self):
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise PredictorDomainError(f"epsilon must be positive, got {self.epsilon}")
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise PredictorDomainError(f"dt must be positive, got {self.dt}")
        if not (self.v0 >= 0 and math.isfinite(self.v0)):
            raise PredictorDomainError(f"v0 must be non-negative, got {self.v0}")
        if not math.isfinite(self.a0):
            raise PredictorDomainError(f"a0 must be finite, got {self.a0}")


@dataclass(frozen=True, slots=True)
class PredictorState:
    a_hat: float = 0.0
    v: float = 1.0
    last_rba: float = 0.0
    initialized: bool = False


@dataclass(frozen=True, slots=True)
class PredictionTrace:
    """Everything one update computes. a and blend are None on the recording step."""

    state: PredictorState
    measured: float
    a: float | None
    blend: float | None
    raw: float
    predicted: float


def initial_state(params: PredictorParams) -> PredictorState:
    return PredictorState(a_hat=params.a0, v=params.v0, last_rba=0.0, initialized=False)


def measure_rba(capacity: float, load: float) -> float:
    return max(capacity - load, 0.0)


def predict_trace(state: PredictorState, params: PredictorParams, r_k: float) -> PredictionTrace:
    """
    Runs one predictor update and keeps every intermediate value.

    Args:
        state (PredictorState): Memory of the node before time k.
        params (PredictorParams): Process noise and tick length.
        r_k (float): RBA measured at time k.

    Returns:
        PredictionTrace: New state, measured acceleration, blending factor and the
        raw and clamped prediction for time k+1.

    Raises:
        PredictorDomainError: If r_k is negative or not finite.
    """
    if not (r_k >= 0 and math.isfinite(r_k)):
        raise PredictorDomainError(f"measured RBA must be a non-negative number, got {r_k}")

    if not state.initialized:
        new_state = replace(state, last_rba=r_k, initialized=True)
        return PredictionTrace(new_state, r_k, None, None, r_k, r_k)

    a_k = (r_k - state.last_rba) / params.dt
    a_prior = state.a_hat
    v_prior = state.v + params.epsilon
    blend = v_prior / (v_prior + params.epsilon)
    a_hat = a_prior + blend * (a_k - a_prior)
    v = (1.0 - blend) * v_prior
    raw = r_k + a_hat * params.dt

    new_state = PredictorState(a_hat=a_hat, v=v, last_rba=r_k, initialized=True)
    return PredictionTrace(new_state, r_k, a_k, blend, raw, max(raw, 0.0))


def update_and_predict(state: PredictorState, params: PredictorParams, r_k: float) -> tuple[PredictorState, float]:
    trace = predict_trace(state, params, r_k)
    return trace.state, trace.predicted


def replay(values: Iterable[float], params: PredictorParams) -> list[PredictionTrace]:
    """Feeds a whole RBA history through a fresh predictor."""
    state = initial_state(params)
    traces = []
    for value in values:
        trace = predict_trace(state, params, value)
        traces.append(trace)
        state = trace.state
    return traces
