"""
utils_errors.py - the exception hierarchy shared by every package.

Library code raises these; only the cli commands catch them and turn
them into exit codes (2 for ConfigError, 1 for everything else).
Errors carrying extra fields define __reduce__ so they pickle across the
fold worker pool.
"""

#####################################
# Base
#####################################


class BenchmarkError(Exception):
    """Root of all errors raised by the benchmark toolkit."""


class ConfigError(BenchmarkError):
    """Invalid configuration, unknown names or unusable option combinations."""


#####################################
# Data errors
#####################################


class DataError(BenchmarkError):
    """Problems with annotation files or derived trajectories."""


class ParseError(DataError):
    """A malformed record in an annotation file."""

    def __init__(self, message: str, line_number: int, path: str | None = None):
        self.line_number = line_number
        self.path = path
        where = f"{path}:{line_number}" if path else f"line {line_number}"
        super().__init__(f"{where}: {message}")
        self._args = (message, line_number, path)

    def __reduce__(self):
        return type(self), self._args


class ValidationError(DataError):
    """A record parsed but violates a data invariant (e.g. non-finite coordinate)."""


class InsufficientLength(DataError, ValueError):
    """A position or ground-truth sequence is too short for the operation."""


class InsufficientHistory(DataError, ValueError):
    """A motion history is too short for the requested predictor."""


#####################################
# Model errors
#####################################


class ShapeError(BenchmarkError, ValueError):
    """Input features do not match the model's configured dimensions."""


class CapabilityError(BenchmarkError):
    """The model cannot provide what the caller needs (e.g. input gradients)."""


class TrainingError(BenchmarkError):
    """Training could not proceed."""


class NonFiniteGradientError(TrainingError):
    """A gradient contained NaN or infinity; training is aborted."""

    def __init__(self, parameter: str, diagnostics: str):
        self.parameter = parameter
        self.diagnostics = diagnostics
        super().__init__(f"non-finite gradient for '{parameter}': {diagnostics}")

    def __reduce__(self):
        return type(self), (self.parameter, self.diagnostics)


#####################################
# Run errors
#####################################


class FoldError(BenchmarkError):
    """A leave-one-out fold failed; the whole report is aborted."""

    def __init__(self, test_scene: str, cause: Exception):
        self.test_scene = test_scene
        self.cause = cause
        super().__init__(f"fold with test scene '{test_scene}' failed: {cause}")

    def __reduce__(self):
        return type(self), (self.test_scene, self.cause)


class ReportError(BenchmarkError):
    """Result files are missing, corrupt or in conflict."""

    def __init__(self, message: str, offending_files: list[str]):
        self.message = message
        self.offending_files = list(offending_files)
        listing = ", ".join(self.offending_files)
        super().__init__(f"{message}: {listing}")

    def __reduce__(self):
        return type(self), (self.message, self.offending_files)
