"""Shared exception types for the package."""


class InputError(ValueError):
    """Malformed or inconsistent input: graphs, statements, polynomials."""


class PreconditionError(RuntimeError):
    """A structural precondition of an operation fails for this input."""


class GuardExceeded(RuntimeError):
    """An enumeration or matrix size guard was exceeded.

    Raise the relevant limit in :class:`bntoric.dag.Limits` to proceed.
    """
