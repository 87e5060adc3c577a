class DomainError(ValueError):
    """A precondition of an operation was violated; the message names it."""


class RangeError(DomainError):
    """A requested rate lies outside what a capacity functional can reach."""
