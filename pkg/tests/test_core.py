"""Test configuration loading and the error hierarchy."""

import pytest

from src.core.config import deep_merge, get_run_defaults, get_system_config, load_yaml_file
from src.core.errors import (
    ConfigError,
    ExperimentError,
    NumericalError,
    ParseError,
    ShapeError,
    SPMLDError,
)


class TestConfig:
    """Test YAML loading and merging."""

    def test_run_defaults_sections(self):
        """Defaults carry every run section."""
        defaults = get_run_defaults()
        for section in ("data", "model", "pace", "optim", "experiment", "gridsearch", "output"):
            assert section in defaults
        assert defaults["pace"]["lambda0"] == 0.1
        assert defaults["gridsearch"]["lambda0"] == [0.1, 0.01, 0.001, 0.0001, 0.00001]
        assert len(defaults["gridsearch"]["gamma0"]) == 10

    def test_run_defaults_are_private_copies(self):
        """Mutating a returned copy does not leak into later calls."""
        first = get_run_defaults()
        first["model"]["g"] = 99
        assert get_run_defaults()["model"]["g"] == 3

    def test_deep_merge_overrides_nested(self):
        base = {"a": {"b": 1, "c": 2}, "d": 3}
        merged = deep_merge(base, {"a": {"c": 5}})
        assert merged == {"a": {"b": 1, "c": 5}, "d": 3}
        assert base["a"]["c"] == 2

    def test_deep_merge_rejects_unknown_key(self):
        """Unknown keys are named with their dotted path."""
        with pytest.raises(ConfigError, match="a.x"):
            deep_merge({"a": {"b": 1}}, {"a": {"x": 2}})

    def test_deep_merge_rejects_scalar_for_section(self):
        with pytest.raises(ConfigError, match="mapping"):
            deep_merge({"a": {"b": 1}}, {"a": 5})

    def test_system_config_env_override(self, monkeypatch):
        monkeypatch.setenv("SPMLD_LOG_LEVEL", "DEBUG")
        monkeypatch.setenv("SPMLD_WORKERS", "3")
        system = get_system_config()
        assert system["log_level"] == "DEBUG"
        assert system["workers"] == 3

    def test_load_yaml_file_missing(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_yaml_file(tmp_path / "missing.yaml")

    def test_load_yaml_file_not_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError, match="mapping"):
            load_yaml_file(path)


class TestErrors:
    """Test error messages and exit codes."""

    def test_base_exit_code(self):
        assert SPMLDError("x").exit_code == 1
        assert ShapeError("x", module="model").module == "model"

    def test_numerical_error_prefix(self):
        error = NumericalError("gradient is not finite", block="W", iteration=4)
        assert str(error) == "iteration 4: block W: gradient is not finite"
        assert error.exit_code == 2
        assert error.module == "optim"

    def test_parse_error_line(self):
        error = ParseError("bad token", line=7)
        assert error.line == 7
        assert str(error).startswith("line 7:")

    def test_experiment_error_takes_cause_exit_code(self):
        """A failed seed keeps the exit code of the error that caused it."""
        cause = NumericalError("objective is not finite", block="V")
        try:
            raise ExperimentError(str(cause), seed=3) from cause
        except ExperimentError as error:
            assert error.seed == 3
            assert "seed 3" in str(error)
            assert error.exit_code == 2

    def test_experiment_error_without_cause(self):
        assert ExperimentError("boom", seed=1).exit_code == 1
