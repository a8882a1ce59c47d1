"""Exceptions shared across the package."""


class InputError(ValueError):
    """A precondition or file-format invariant was violated by the caller."""
