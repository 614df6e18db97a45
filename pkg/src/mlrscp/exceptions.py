"""Exception types raised across the package."""


class DimensionError(ValueError):
    """Shapes of the inputs do not agree."""


class ValidationError(ValueError):
    """An input violates a documented invariant (row sums, positivity, ...)."""


class NotMLRError(ValueError):
    """The data is not MLR-ordered; ``report`` holds the failing quadruples."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DegenerateSystemError(ValueError):
    """Normalization was requested but the system has no sign-constrained coordinates."""


class CannotStrictifyError(RuntimeError):
    """A weak solution could not be perturbed into a strictly signed one."""


class ConstructionFailedError(RuntimeError):
    """The inductive construction failed on data it should accept."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics


class RetryExhaustedError(RuntimeError):
    """A random generator could not produce a valid instance within its retry budget."""


class SchemaError(ValueError):
    """A JSON document does not match the expected schema."""
