# ZStab - Exact asymptotic stability of numerical sheaf classes
# Copyright (C) 2025 Oleg Tokmakov
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""Configuration management for ZStab."""

import logging
import os
from pathlib import Path
from typing import Literal, Optional

import yaml
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)


class OutputConfig(BaseModel):
    """Report rendering."""

    format: Literal["text", "json"] = "text"
    show_float: bool = False  # Decimal approximations next to exact values
    float_digits: int = Field(default=6, ge=1, le=30)
    indent: int = Field(default=2, ge=0)


class LoggingConfig(BaseModel):
    """Logging configuration."""

    level: str = "WARNING"
    format: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class SweepConfig(BaseModel):
    """Parameter sweep defaults."""

    workers: int = Field(default=1, ge=1)
    steps: int = Field(default=10, ge=1)
    budget_seconds: float = 1.0


class OracleConfig(BaseModel):
    """Randomised oracle defaults."""

    seed: int = 0
    instances: int = Field(default=500, ge=1)
    max_dim: int = Field(default=4, ge=1)
    rho_bound: int = Field(default=3, ge=1)


class ReproConfig(BaseModel):
    """Built-in reproduction parameters."""

    bayer_grid_bound: int = Field(default=2, ge=1)
    bayer_grid_max_dim: int = Field(default=3, ge=1)
    workers: Optional[int] = Field(default=None, ge=1)  # None: every core
    dhym_dim: int = Field(default=3, ge=3)


class Settings(BaseSettings):
    """Main settings container.

    Values come from the YAML file; ``ZSTAB_<SECTION>__<FIELD>`` environment
    variables override them.
    """

    model_config = SettingsConfigDict(env_prefix="ZSTAB_", env_nested_delimiter="__")

    output: OutputConfig = Field(default_factory=OutputConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    oracle: OracleConfig = Field(default_factory=OracleConfig)
    repro: ReproConfig = Field(default_factory=ReproConfig)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls,
        init_settings,
        env_settings,
        dotenv_settings,
        file_secret_settings,
    ):
        return env_settings, init_settings


def _config_path_from_env() -> Optional[str]:
    return os.environ.get("ZSTAB_CONFIG")


def load_config(config_path: Optional[str] = None) -> Settings:
    """Load configuration from YAML file.

    Args:
        config_path: Path to config file. If None, tries ``ZSTAB_CONFIG``
            and then the default locations.

    Returns:
        Settings object with loaded configuration.
    """
    default_paths = [
        Path("config/config.yaml"),
        Path("config.yaml"),
        Path.home() / ".config" / "zstab" / "config.yaml",
    ]

    if config_path is None:
        config_path = _config_path_from_env()

    config_file = None

    if config_path:
        config_file = Path(config_path)
        if not config_file.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")
    else:
        for path in default_paths:
            if path.exists():
                config_file = path
                break

    if config_file is None:
        logger.debug("No config file found, using defaults")
        return Settings()

    logger.debug("Loading config from: %s", config_file)

    with open(config_file, "r") as f:
        config_data = yaml.safe_load(f) or {}

    return Settings(**config_data)


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get the global settings instance."""
    global _settings
    if _settings is None:
        _settings = load_config()
    return _settings


def init_settings(config_path: Optional[str] = None) -> Settings:
    """Initialize settings from config file."""
    global _settings
    _settings = load_config(config_path)
    return _settings


def save_config(settings: Settings, config_path: Optional[str] = None) -> str:
    """Save configuration to YAML file and return the path written."""
    if config_path is None:
        config_path = _config_path_from_env() or "config/config.yaml"

    config_data = settings.model_dump(exclude_none=True)

    with open(config_path, "w") as f:
        yaml.dump(config_data, f, default_flow_style=False, sort_keys=False)

    logger.info("Configuration saved to: %s", config_path)
    return config_path


def update_settings(new_settings: Settings) -> None:
    """Update the global settings instance."""
    global _settings
    _settings = new_settings
