"""Configuration management for the SPMLD toolkit."""

import copy
import logging
import os
from pathlib import Path
from typing import Any

import yaml

from .errors import ConfigError

_config_cache: dict[str, Any] = {}

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def get_project_root() -> Path:
    """Get the project root directory."""
    return Path(__file__).parent.parent.parent


def load_yaml_config(config_name: str) -> dict[str, Any]:
    """Load a YAML configuration file from the project ``config`` directory."""
    if config_name in _config_cache:
        return _config_cache[config_name]

    config_path = get_project_root() / "config" / config_name
    if not config_path.exists():
        raise ConfigError(f"Config file not found: {config_path}", module="config")

    with open(config_path, encoding="utf-8") as f:
        config = yaml.safe_load(f) or {}

    _config_cache[config_name] = config
    return config


def load_yaml_file(path: str | Path) -> dict[str, Any]:
    """Load an arbitrary YAML mapping (run configs, manifests)."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Config file not found: {path}", module="config")
    with open(path, encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"Invalid YAML in {path}: {e}", module="config") from e
    if not isinstance(data, dict):
        raise ConfigError(f"Config {path} must be a mapping", module="config")
    return data


def get_config() -> dict[str, Any]:
    """Get the main configuration."""
    return load_yaml_config("main.yaml")


def get_run_defaults() -> dict[str, Any]:
    """Get a private copy of the run defaults section."""
    return copy.deepcopy(get_config().get("defaults", {}))


def get_system_config() -> dict[str, Any]:
    """Get system settings with environment overrides applied.

    Environment variables:
    - SPMLD_LOG_LEVEL: root log level (DEBUG, INFO, WARNING, ...)
    - SPMLD_WORKERS: size of the job pool used by experiment and gridsearch
    """
    system = get_config().get("system", {})
    return {
        "log_level": os.getenv("SPMLD_LOG_LEVEL", system.get("log_level", "INFO")),
        "workers": int(os.getenv("SPMLD_WORKERS", system.get("workers", 1))),
    }


def deep_merge(base: dict[str, Any], override: dict[str, Any], path: str = "") -> dict[str, Any]:
    """Merge ``override`` into a copy of ``base``, rejecting keys ``base`` does not know.

    Raises:
        ConfigError: If ``override`` contains an unknown key.
    """
    merged = copy.deepcopy(base)
    for key, value in override.items():
        dotted = f"{path}.{key}" if path else str(key)
        if key not in base:
            raise ConfigError(f"Unknown config key: {dotted}", module="config")
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"Config key {dotted} must be a mapping", module="config")
            merged[key] = deep_merge(base[key], value, dotted)
        else:
            merged[key] = value
    return merged


def setup_logging(level: str | None = None) -> None:
    """Configure the root logger once from system settings."""
    level_name = (level or get_system_config()["log_level"]).upper()
    logging.basicConfig(level=getattr(logging, level_name, logging.INFO), format=LOG_FORMAT)
