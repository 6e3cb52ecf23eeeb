"""Shared error types. The CLI maps these onto exit codes."""


class UsageError(ValueError):
    """Caller violated a precondition (bad arguments, mismatched orders)."""


class SolverError(RuntimeError):
    """A series solver failed to stabilize or a symbolic degree bound blew up."""


class ResourceError(RuntimeError):
    """An exact computation was refused because the instance is too large."""


class NotProvided(LookupError):
    """The requested limit value has no defined closed form or table entry."""
