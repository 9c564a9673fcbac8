"""Shared exception types."""


class CapExceededError(ValueError):
    """A configured size cap would be exceeded by the requested computation."""
