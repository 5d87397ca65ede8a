"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class EvaluationError(RuntimeError):
    """A function produced a non-finite or otherwise unusable value."""


class TruncationError(RuntimeError):
    """Requested certified accuracy could not be achieved.

    Carries the best value obtained and the accuracy bound that was achieved,
    so callers can decide whether the partial result is still usable.
    """

    def __init__(self, message, value=None, achieved_bound=None):
        super().__init__(message)
        self.value = value
        self.achieved_bound = achieved_bound


class IllConditionedError(RuntimeError):
    """A linear system was too ill-conditioned to solve reliably."""

    def __init__(self, message, condition_number):
        super().__init__(message)
        self.condition_number = condition_number


class DataError(ValueError):
    """Structurally invalid data (bad measure, zero weight, ...)."""


class DescriptorError(ValueError):
    """A JSON descriptor does not match its schema."""

    def __init__(self, message, schema_pointer):
        super().__init__(message)
        self.schema_pointer = schema_pointer
