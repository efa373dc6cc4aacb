"""Error types shared by all modules."""


class ValidationError(ValueError):
    """Input outside the domain of an operation."""


class StructuralError(RuntimeError):
    """A chain reduction reached a malformed intermediate state."""


class InconsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""
