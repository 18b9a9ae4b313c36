"""
Experiment configuration.

The on-disk format is flat ``section.key = value`` text; it is parsed into the
nested pydantic model below, which collects every violated constraint at once.
"""

import math
from enum import StrEnum
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.core.exceptions import DataIOError, ValidationFailed
from src.core.predictor import PredictorParams
from src.core.tracker import BlobSequenceSpec, TrackerParams


class Protocol(StrEnum):
    RBA = "rba"
    GPSR = "gpsr"
    LEACH = "leach"


# Fixed order for seed derivation; independent of the order protocols are listed in a config.
PROTOCOL_ORDER = (Protocol.RBA, Protocol.GPSR, Protocol.LEACH)


class TrafficMode(StrEnum):
    SYNTHETIC = "synthetic"
    TRACKER = "tracker"


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


def _is_tick_multiple(value: float, dt: float) -> bool:
    ticks = value / dt
    return math.isclose(ticks, round(ticks), abs_tol=1e-9)


class Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ExperimentSection(Section):
    protocols: list[Protocol] = Field(default_factory=lambda: list(PROTOCOL_ORDER), min_length=1)
    node_counts: list[int] = Field(default_factory=lambda: [200], min_length=1)
    trials: int = Field(default=10, ge=1)
    base_seed: int = Field(default=1, ge=0, lt=2**64)
    duration_s: float = Field(default=80.0, ge=0)
    sample_interval_s: float = Field(default=5.0, gt=0)
    output_dir: str | None = None
    check_invariants: bool = True

    @field_validator("protocols", mode="before")
    @classmethod
    def split_protocols(cls, value: Any) -> Any:
        return _split_list(value)

    @field_validator("node_counts", mode="before")
    @classmethod
    def expand_node_counts(cls, value: Any) -> Any:
        """Accepts ``50, 100`` as well as the inclusive range ``50:800:50``."""
        if isinstance(value, str) and ":" in value:
            parts = value.split(":")
            if len(parts) != 3:
                raise ValueError("range must read start:stop:step")
            start, stop, step = (int(part) for part in parts)
            if step <= 0 or stop < start:
                raise ValueError("range needs step > 0 and stop >= start")
            return list(range(start, stop + 1, step))
        return _split_list(value)

    @field_validator("node_counts")
    @classmethod
    def positive_counts(cls, value: list[int]) -> list[int]:
        if any(count < 1 for count in value):
            raise ValueError("node counts must be >= 1")
        if len(set(value)) != len(value):
            raise ValueError("node counts must be distinct")
        return value

    @field_validator("protocols")
    @classmethod
    def distinct_protocols(cls, value: list[Protocol]) -> list[Protocol]:
        if len(set(value)) != len(value):
            raise ValueError("protocols must be distinct")
        return value


class NetworkSection(Section):
    width: float = Field(default=200.0, gt=0)
    height: float = Field(default=200.0, gt=0)
    radio_range: float = Field(default=30.0, gt=0)
    capacity: float = Field(default=100.0, gt=0)
    unit_bytes: int = Field(default=1_000_000, ge=1)
    max_hops: int = Field(default=64, ge=1)
    max_rounds_per_tick: int = Field(default=1000, ge=1)


class PredictorSection(Section):
    epsilon: float = Field(default=0.01, gt=0)
    dt: float = Field(default=1.0, gt=0)
    a0: float = 0.0
    v0: float = Field(default=1.0, ge=0)

    def params(self) -> PredictorParams:
        return PredictorParams(epsilon=self.epsilon, dt=self.dt, a0=self.a0, v0=self.v0)


class EnergySection(Section):
    e_elec: float = Field(default=50e-9, ge=0)
    eps_amp: float = Field(default=100e-12, ge=0)
    initial_j: float = Field(default=0.5, gt=0)
    idle_j: float = Field(default=0.0, ge=0)
    control_message_j: float = Field(default=0.0, ge=0)


class TrafficSection(Section):
    mode: TrafficMode = TrafficMode.SYNTHETIC
    source_fraction: float = Field(default=0.1, gt=0, le=1)
    sources: int | None = Field(default=None, ge=1)
    rate_bytes: int = Field(default=1000, ge=0)
    packet_bytes: int = Field(default=1000, ge=1)
    frames_per_tick: int = Field(default=1, ge=1)


class TrackerSection(Section):
    bins: int = Field(default=16, ge=2, le=256)
    min_window: int = Field(default=8, ge=1)
    threshold: float = Field(default=1.0, gt=0)
    max_iter: int = Field(default=20, ge=1)
    roi_margin: float = Field(default=1.2, ge=1)
    min_intensity: int = Field(default=32, ge=0, le=255)
    metadata_only: bool = False

    def params(self) -> TrackerParams:
        return TrackerParams(**self.model_dump())


class SyntheticSection(Section):
    width: int = Field(default=128, ge=8)
    height: int = Field(default=128, ge=8)
    frames: int = Field(default=100, ge=1)
    sigma: float = Field(default=4.0, gt=0)
    growth: float = 0.0
    speed: float = Field(default=2.0, ge=0)
    heading_deg: float = 45.0
    peak: int = Field(default=255, ge=1, le=255)
    background: int = Field(default=0, ge=0, le=254)
    noise: float = Field(default=0.0, ge=0)
    seed: int = Field(default=0, ge=0)

    def spec(self) -> BlobSequenceSpec:
        return BlobSequenceSpec(**self.model_dump())


class LeachSection(Section):
    p: float = Field(default=0.05, gt=0, lt=1)
    round_s: float = Field(default=5.0, gt=0)


class GpsrSection(Section):
    beacon_interval_s: float = Field(default=1.0, gt=0)


class ExperimentConfig(Section):
    experiment: ExperimentSection = Field(default_factory=ExperimentSection)
    network: NetworkSection = Field(default_factory=NetworkSection)
    predictor: PredictorSection = Field(default_factory=PredictorSection)
    energy: EnergySection = Field(default_factory=EnergySection)
    traffic: TrafficSection = Field(default_factory=TrafficSection)
    tracker: TrackerSection = Field(default_factory=TrackerSection)
    synthetic: SyntheticSection = Field(default_factory=SyntheticSection)
    leach: LeachSection = Field(default_factory=LeachSection)
    gpsr: GpsrSection = Field(default_factory=GpsrSection)

    @model_validator(mode="after")
    def check_cross_section(self) -> "ExperimentConfig":
        problems = _cross_section_problems({name: getattr(self, name) for name in type(self).model_fields})
        if problems:
            raise ValueError("; ".join(problems))
        return self

    def ticks(self, seconds: float) -> int:
        return round(seconds / self.predictor.dt)

    @property
    def cell_count(self) -> int:
        return len(self.experiment.protocols) * len(self.experiment.node_counts)

    def to_flat_text(self) -> str:
        """Canonical flat text; parse_flat_config(cfg.to_flat_text()) == cfg."""
        lines = []
        for section_name in type(self).model_fields:
            section = getattr(self, section_name)
            for key in type(section).model_fields:
                value = getattr(section, key)
                if value is None:
                    continue
                lines.append(f"{section_name}.{key} = {_format_value(value)}")
        return "\n".join(lines) + "\n"

    def with_overrides(self, base_seed: int | None = None, output_dir: str | None = None) -> "ExperimentConfig":
        data = self.model_dump()
        if base_seed is not None:
            data["experiment"]["base_seed"] = base_seed
        if output_dir is not None:
            data["experiment"]["output_dir"] = output_dir
        return validate_config(data)


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, StrEnum):
        return value.value
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, list):
        return ", ".join(_format_value(item) for item in value)
    return str(value)


def _cross_section_problems(sections: dict[str, Section]) -> list[str]:
    """Constraints spanning sections. A check runs only when every section it reads is present."""
    problems = []
    network, predictor, traffic = (sections.get(name) for name in ("network", "predictor", "traffic"))
    if network and predictor and traffic:
        budget = network.capacity * network.unit_bytes * predictor.dt
        if traffic.packet_bytes > budget:
            problems.append(
                f"traffic.packet_bytes ({traffic.packet_bytes}) exceeds the per-tick forwarding budget "
                f"network.capacity * network.unit_bytes * predictor.dt ({budget:g})"
            )
    if predictor:
        for section_name, key in (
            ("experiment", "duration_s"),
            ("experiment", "sample_interval_s"),
            ("leach", "round_s"),
            ("gpsr", "beacon_interval_s"),
        ):
            section = sections.get(section_name)
            if section is None:
                continue
            value = getattr(section, key)
            if not _is_tick_multiple(value, predictor.dt):
                problems.append(
                    f"{section_name}.{key} ({value:g}) must be a whole number of ticks of {predictor.dt:g} s"
                )
    synthetic = sections.get("synthetic")
    if synthetic and synthetic.background >= synthetic.peak:
        problems.append("synthetic.background must be below synthetic.peak")
    return problems


def _valid_sections(data: dict[str, Any]) -> dict[str, Section]:
    sections = {}
    for name, field in ExperimentConfig.model_fields.items():
        try:
            sections[name] = field.annotation.model_validate(data.get(name, {}))
        except ValidationError:
            continue
    return sections


def _describe(error: ValidationError, data: dict[str, Any]) -> list[str]:
    """
    Field errors of every section, then the cross-section problems among the sections that did validate.

    Pydantic skips model validators once a field fails, so cross-section checks are rerun here.
    """
    problems = []
    for item in error.errors():
        if not item["loc"]:
            continue
        location = ".".join(str(part) for part in item["loc"])
        if item["type"] == "extra_forbidden":
            problems.append(f"{location}: unknown key")
        else:
            problems.append(f"{location}: {item['msg']}")
    problems.extend(_cross_section_problems(_valid_sections(data)))
    return problems


def validate_config(data: dict[str, Any]) -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as error:
        raise ValidationFailed("invalid experiment config", _describe(error, data))


def parse_flat_config(text: str, source: str = "<config>") -> ExperimentConfig:
    """
    Parses ``section.key = value`` lines into an ExperimentConfig.

    Blank lines and ``#`` comments are skipped. Malformed lines, duplicate keys and
    every schema violation are collected and reported together.

    Raises:
        ValidationFailed: With the full list of problems.
    """
    data: dict[str, dict[str, str]] = {}
    problems = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        section, dot, field = key.partition(".")
        if not sep or not dot or not section or not field:
            problems.append(f"{source}:{number}: expected 'section.key = value', got {raw.strip()!r}")
            continue
        entries = data.setdefault(section, {})
        if field in entries:
            problems.append(f"{source}:{number}: duplicate key {key}")
            continue
        entries[field] = value

    try:
        config = ExperimentConfig.model_validate(data)
    except ValidationError as error:
        problems.extend(_describe(error, data))
        config = None
    if problems:
        raise ValidationFailed(f"invalid experiment config {source}", problems)
    return config


def load_config(path: str | Path | None) -> ExperimentConfig:
    if path is None:
        return ExperimentConfig()
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as error:
        raise DataIOError(f"cannot read config {path}: {error.strerror or error}")
    return parse_flat_config(text, str(path))
