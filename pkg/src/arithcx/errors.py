"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """A configured resource budget was exceeded."""


class BudgetExceededError(ResourceLimitError):
    """Vertex budget exceeded while growing a Cayley ball."""


class CapExceededError(ResourceLimitError):
    """Enumeration cap exceeded while collecting permutations."""
