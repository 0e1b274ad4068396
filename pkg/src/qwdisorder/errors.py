"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation accepts."""


class CapacityError(RuntimeError):
    """The walker's support would leave the preallocated lattice window.

    This always indicates a sizing bug in the caller, never physics.
    """


class ConsistencyError(ArithmeticError):
    """A reduced coin state violates positivity beyond rounding tolerance."""
