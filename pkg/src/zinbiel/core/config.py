"""Configuration management for the Zinbiel toolkit."""

from functools import lru_cache

from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

FORMAT_VERSION = 1


class Settings(BaseSettings):
    """Ambient settings; read from ``ZINBIEL_*`` environment variables.

    Only logging behaviour is configurable this way. Numeric algorithm
    options are always passed explicitly so runs stay reproducible.
    """

    model_config = SettingsConfigDict(
        env_prefix="ZINBIEL_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="forbid",
    )

    log_level: str = Field(default="WARNING", description="Logging level")
    debug: bool = Field(default=False, description="Debug mode")
    json_logs: bool = Field(default=False, description="Emit JSON log lines")


class SearchDefaults(BaseModel):
    """Documented defaults of the searching algorithms."""

    model_config = ConfigDict(frozen=True)

    grid_height: int = Field(default=3, ge=1, description="Integer grid height")
    samples: int = Field(default=64, ge=0, description="Random candidates")
    sample_height: int = Field(default=10, ge=1, description="Random height")
    seed: int = Field(default=0, description="Random seed")
    deduce_budget: int = Field(default=500, ge=1, description="Identity instances")
    iso_height: int = Field(default=6, ge=1, description="Rational grid height")
    iso_nodes: int = Field(default=4000, ge=1, description="Search node budget")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Get the process-wide settings instance."""
    return Settings()


def get_search_defaults() -> SearchDefaults:
    """Get the default search parameters."""
    return SearchDefaults()
