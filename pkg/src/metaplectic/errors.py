"""Shared exception types."""


class DomainError(ValueError):
    """Input outside an operation's documented domain."""


class ResourceLimitError(RuntimeError):
    """A configured enumeration or truncation bound was exceeded."""


class ModularityError(ValueError):
    """A claimed modular-transformation property failed numerically."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual
