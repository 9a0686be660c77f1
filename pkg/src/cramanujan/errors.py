"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """An argument violates a documented precondition."""


class OutOfRangeError(ValueError):
    """A query falls outside the range a table can answer exactly."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured memory or size ceiling."""
