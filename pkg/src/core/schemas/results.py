"""Row schemas of every CSV the tool writes. Field order is column order."""

from pydantic import BaseModel, ConfigDict, Field


class Row(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)


class DeliveredRow(Row):
    protocol: str
    n: int
    trial: int
    seed: int
    delivered_bytes: int
    mean_delay_s: float
    drops: int
    control_msgs: int


class AliveRow(Row):
    protocol: str
    t_s: float
    alive_count: int
    trial: int
    seed: int


class SummaryRow(Row):
    protocol: str
    n: int
    trials: int
    mean_delivered_bytes: float
    mean_delay_s: float
    mean_drops: float
    mean_control_msgs: float


class AliveSummaryRow(Row):
    protocol: str
    n: int
    t_s: float
    mean_alive_count: float


class TrackRow(Row):
    frame: int
    cx: float
    cy: float
    w: int
    h: int
    m00: float
    iters: int
    lost: bool
    payload_bytes: int


class TruthRow(Row):
    frame: int
    x: float
    y: float


class PredictionRow(Row):
    step: int
    measured: float
    a: float | None
    blend: float | None = Field(alias="B")
    a_hat: float
    v: float
    predicted: float
