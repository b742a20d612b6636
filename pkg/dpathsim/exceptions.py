"""Exceptions raised by dpathsim.

Every error carries a stable ``code`` so callers (and the CLI) can tell
failures apart without matching on message text.
"""

from typing import Any, Optional


class DpathsimError(Exception):
    """Base class for all dpathsim errors."""

    code = "dpathsim-error"

    def __init__(self, message: str) -> None:
        """Initialize the error.

        Args:
            message: A human-readable description of the failure.
        """
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        """Render the error as ``code: message``."""
        return f"{self.code}: {self.message}"


# -----------------------------------------------------------------------
# Empirical distributions
# -----------------------------------------------------------------------
class EmptyTraceError(DpathsimError, ValueError):
    """No samples were supplied (or none survived filtering)."""

    code = "empty-trace"


class InvalidSampleError(DpathsimError, ValueError):
    """A delay sample is negative, NaN, infinite or not a number."""

    code = "invalid-sample"

    def __init__(self, index: int, value: Any) -> None:
        """Initialize the error.

        Args:
            index: The position of the offending sample.
            value: The offending value.
        """
        super().__init__(f"sample at index {index} is not a finite non-negative delay: {value!r}")
        self.index = index
        self.value = value


class InvalidQueryError(DpathsimError, ValueError):
    """An ECDF was evaluated at NaN."""

    code = "invalid-query"


class InvalidProbabilityError(DpathsimError, ValueError):
    """A quantile was requested outside (0, 1]."""

    code = "invalid-probability"

    def __init__(self, probability: Any) -> None:
        """Initialize the error.

        Args:
            probability: The rejected probability level.
        """
        super().__init__(f"probability must lie in (0, 1], got {probability!r}")
        self.probability = probability


# -----------------------------------------------------------------------
# Flow cache
# -----------------------------------------------------------------------
class CacheFullError(DpathsimError, RuntimeError):
    """The flow cache is at capacity and eviction is disabled."""

    code = "cache-full"

    def __init__(self, key: Any, capacity: int) -> None:
        """Initialize the error.

        Args:
            key: The flow key that could not be installed.
            capacity: The cache capacity.
        """
        super().__init__(f"cannot install {key}: cache full ({capacity} entries) and eviction disabled")
        self.key = key
        self.capacity = capacity


class AlreadyInstalledError(DpathsimError, ValueError):
    """A flow key was installed twice."""

    code = "already-installed"

    def __init__(self, key: Any) -> None:
        """Initialize the error.

        Args:
            key: The duplicate flow key.
        """
        super().__init__(f"flow {key} is already installed")
        self.key = key


class MissingFlowError(DpathsimError, LookupError):
    """Statistics were updated for a flow that is not installed."""

    code = "missing-flow"

    def __init__(self, key: Any) -> None:
        """Initialize the error.

        Args:
            key: The absent flow key.
        """
        super().__init__(f"flow {key} is not installed")
        self.key = key


# -----------------------------------------------------------------------
# Scenarios
# -----------------------------------------------------------------------
class InvalidRateError(DpathsimError, ValueError):
    """A data rate is zero, negative or not finite."""

    code = "invalid-rate"


class UnknownModelError(DpathsimError, LookupError):
    """A model_source names neither a bundled model nor a readable model file."""

    code = "unknown-model"

    def __init__(self, source: str) -> None:
        """Initialize the error.

        Args:
            source: The unresolvable model_source value.
        """
        super().__init__(f"model source '{source}' is neither a bundled reference model nor a model file")
        self.source = source


class ConfigError(DpathsimError, ValueError):
    """A scenario configuration is invalid."""

    code = "invalid-config"

    def __init__(self, message: str, key: Optional[str] = None) -> None:
        """Initialize the error.

        Args:
            message: What is wrong.
            key: The offending configuration key, when known.
        """
        super().__init__(f"{key}: {message}" if key else message)
        self.key = key


class InvalidReportError(DpathsimError, ValueError):
    """A run directory is missing files or holds inconsistent data."""

    code = "invalid-report"


# -----------------------------------------------------------------------
# Trace and model files
# -----------------------------------------------------------------------
class TraceParseError(DpathsimError, ValueError):
    """A field could not be parsed as a number."""

    code = "parse-error"

    def __init__(self, line: int, message: str) -> None:
        """Initialize the error.

        Args:
            line: The 1-based line number.
            message: What went wrong on that line.
        """
        super().__init__(f"line {line}: {message}")
        self.line = line


class MalformedRowError(DpathsimError, ValueError):
    """A data row has fewer columns than required."""

    code = "malformed-row"

    def __init__(self, line: int, message: str) -> None:
        """Initialize the error.

        Args:
            line: The 1-based line number.
            message: What went wrong on that line.
        """
        super().__init__(f"line {line}: {message}")
        self.line = line


class IncompleteModelError(DpathsimError, ValueError):
    """A stage section is missing or truncated in a model file."""

    code = "incomplete-model"

    def __init__(self, stage: str, message: str = "") -> None:
        """Initialize the error.

        Args:
            stage: The stage whose section is missing or truncated.
            message: Extra detail.
        """
        super().__init__(message or f"stage '{stage}' is missing")
        self.stage = stage


class DuplicateStageError(DpathsimError, ValueError):
    """A stage section appears twice in a model file."""

    code = "duplicate-stage"

    def __init__(self, stage: str) -> None:
        """Initialize the error.

        Args:
            stage: The repeated stage.
        """
        super().__init__(f"stage '{stage}' appears more than once")
        self.stage = stage
