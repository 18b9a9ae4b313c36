from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Ambient knobs of the command-line tool. Experiment parameters never come from here."""

    model_config = SettingsConfigDict(env_prefix="WMSN_", case_sensitive=True)

    LOG_LEVEL: str = "INFO"
    LOG_FILE: str | None = None
    DEFAULT_OUTPUT_DIR: str = "results"
    DEFAULT_JOBS: int = 1

    @field_validator("LOG_LEVEL")
    def normalize_log_level(cls, v: str) -> str:
        level = v.strip().upper()
        if level not in {"CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"}:
            raise ValueError(v)
        return level

    @field_validator("DEFAULT_JOBS")
    def check_jobs(cls, v: int) -> int:
        if v < 1:
            raise ValueError(v)
        return v


settings = Settings()
