"""
Configuration management for the layout post-processing toolkit
"""
import logging
from pathlib import Path
from typing import Optional
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Process-wide settings (per-run options live in PipelineConfig)"""
    
    # Logging
    LOG_LEVEL: str = "INFO"
    
    # Geometry
    REFERENCE_PAGE_SIZE: float = 1025.0  # page size the refine tolerances are quoted at
    REFINE_EPSILON: float = 5.0
    
    # Execution
    DEFAULT_JOBS: int = 1
    
    # Tuning output
    TUNE_HISTORY_FILENAME: str = "history.jsonl"
    TUNE_BEST_FILENAME: str = "best_config.json"
    TUNE_RECORD_WALL_TIME: bool = False  # off keeps reruns byte-identical
    
    class Config:
        # Look for .env in project root (3 levels up from this file)
        env_file = str(Path(__file__).parent.parent.parent / ".env")
        case_sensitive = True


def configure_logging(level: Optional[str] = None) -> None:
    """Tagged console logging: `[Refine] ...`, `[Tune] ...`"""
    logging.basicConfig(
        level=(level or settings.LOG_LEVEL).upper(),
        format="[%(name)s] %(message)s",
        force=True,
    )


# Global settings instance
settings = Settings()
