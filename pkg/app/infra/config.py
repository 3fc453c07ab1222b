"""Application configuration via Pydantic Settings."""

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Experiments
    master_seed: int = 20240601
    sup_resolution: int = 10001
    presample_fraction: float = 0.1
    workers: int = 1
    output_dir: str = "./results"
    full_scale: bool = False

    # Logging
    log_level: str = "INFO"

    # HTTP API
    api_max_budget: int = 1_000_000  # cap on N for /api/approximate
    app_host: str = "127.0.0.1"
    app_port: int = 8000

    model_config = {"env_file": ".env", "env_file_encoding": "utf-8"}


settings = Settings()
