from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import Optional


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="LESLIE_DYN_",
        case_sensitive=False,
        extra="ignore"
    )
    # Parallelism
    threads: int = Field(default=4, ge=1)

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # Orbit analysis defaults
    cycle_tol: float = Field(default=1e-6, gt=0)
    tol_floor: float = Field(default=1e-9, gt=0)
    transient: int = Field(default=1000, ge=0)
    max_period: int = Field(default=64, ge=1)

    # Lyapunov estimation
    lyapunov_transient: int = Field(default=1000, ge=0)
    renorm_interval: int = Field(default=1, ge=1)


settings = Settings()
