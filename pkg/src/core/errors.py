"""Custom exceptions for the SPMLD toolkit."""


class SPMLDError(Exception):
    """Base exception for the SPMLD toolkit.

    Args:
        message: Human readable description.
        module: Name of the toolkit module that raised the error (data, partition, model, ...).
    """

    exit_code = 1

    def __init__(self, message: str, module: str | None = None):
        self.module = module
        super().__init__(message)


class ConfigError(SPMLDError):
    """Configuration related errors."""

    pass


class DatasetError(SPMLDError):
    """Dataset construction or invariant errors."""

    pass


class ParseError(SPMLDError):
    """Malformed input while reading a dataset, mask or partition file."""

    def __init__(self, message: str, line: int | None = None, module: str | None = "data"):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, module)


class RangeError(SPMLDError):
    """Index outside its declared range."""

    pass


class UnsupportedFeatureError(SPMLDError):
    """Input uses a format feature outside the supported subset."""

    pass


class ShapeError(SPMLDError):
    """Matrix dimensions do not agree."""

    pass


class DomainError(SPMLDError):
    """Argument outside the mathematical domain of an operation."""

    pass


class InvariantViolationError(SPMLDError):
    """A model invariant (e.g. unit-norm Laplacian rows) does not hold."""

    pass


class NumericalError(SPMLDError):
    """Non-finite values encountered during optimization."""

    exit_code = 2

    def __init__(
        self,
        message: str,
        block: str | None = None,
        iteration: int | None = None,
        module: str | None = "optim",
    ):
        self.block = block
        self.iteration = iteration
        if block is not None:
            message = f"block {block}: {message}"
        if iteration is not None:
            message = f"iteration {iteration}: {message}"
        super().__init__(message, module)


class UndefinedMetricError(SPMLDError):
    """No instance or label qualifies for a metric."""

    pass


class ExperimentError(SPMLDError):
    """A seed or grid cell of an experiment failed."""

    def __init__(self, message: str, seed: int | None = None, module: str | None = "cli"):
        self.seed = seed
        if seed is not None:
            message = f"seed {seed}: {message}"
        super().__init__(message, module)

    @property
    def exit_code(self) -> int:  # type: ignore[override]
        cause = self.__cause__
        if isinstance(cause, SPMLDError):
            return cause.exit_code
        return 1
