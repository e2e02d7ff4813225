from .config import get_config, get_run_defaults, get_system_config, setup_logging
from .errors import (
    ConfigError,
    DatasetError,
    DomainError,
    ExperimentError,
    InvariantViolationError,
    NumericalError,
    ParseError,
    RangeError,
    ShapeError,
    SPMLDError,
    UndefinedMetricError,
    UnsupportedFeatureError,
)

__all__ = [
    "get_config",
    "get_run_defaults",
    "get_system_config",
    "setup_logging",
    "SPMLDError",
    "ConfigError",
    "DatasetError",
    "DomainError",
    "ExperimentError",
    "InvariantViolationError",
    "NumericalError",
    "ParseError",
    "RangeError",
    "ShapeError",
    "UndefinedMetricError",
    "UnsupportedFeatureError",
]
