# FILE: switchcert/config/models.py

import logging

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class GeneralSettings(BaseSettings):
    """Process-level settings read from the environment or a `.env` file.

    Every field is read from the variable of the same name prefixed with
    ``SWITCHCERT_`` (e.g. ``SWITCHCERT_THREADS``).

    Attributes:
        THREADS (int): Default worker count for Monte Carlo ensembles.
        LOG_DIR (str): Directory holding the rotating 'app.log'.
        CONSOLE_LOG_LEVEL (str): Console handler level name.
        FILE_LOG_LEVEL (str): File handler level name.
        OUTPUT_DIR (str): Default directory for run artifacts.
        PROGRESS (bool): Show a progress bar during ensembles.
    """
    THREADS: int = Field(default=1, ge=1)
    LOG_DIR: str = Field(default="logs")
    CONSOLE_LOG_LEVEL: str = Field(default="INFO")
    FILE_LOG_LEVEL: str = Field(default="DEBUG")
    OUTPUT_DIR: str = Field(default="results")
    PROGRESS: bool = Field(default=False)

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="SWITCHCERT_",
        extra="ignore",
        env_ignore_empty=True,
    )

    @field_validator("CONSOLE_LOG_LEVEL", "FILE_LOG_LEVEL")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"Unknown logging level '{value}'.")
        return level

    def level(self, name: str) -> int:
        """Return the numeric logging level for `CONSOLE_LOG_LEVEL` or `FILE_LOG_LEVEL`."""
        return logging.getLevelName(getattr(self, name))
