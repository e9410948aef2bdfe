"""Application configuration settings."""

from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict

_DATA_DIR = Path(__file__).parent / "data"


class Settings(BaseSettings):
    """Settings loaded from COMMBENCH_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="COMMBENCH_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    app_name: str = "commbench"
    app_version: str = "0.1.0"
    log_level: str = "INFO"

    # Seeding
    seed: int = 42

    # Generator
    max_resample_attempts: int = 100

    # Detection
    lpa_max_sweeps: int = 100
    louvain_max_levels: int = 32
    louvain_min_gain: float = 1e-12

    # Metrics
    powerlaw_min_tail: int = 10
    apl_chunk_size: int = 256

    # Reports
    report_precision: int = 6

    # Sweeps
    jobs: int = 1
    reference_tables_path: Path = _DATA_DIR / "reference_tables.json"


settings = Settings()
