"""Exception hierarchy shared across the package."""


class StrongConvError(Exception):
    """Base class for all package errors."""


class InputError(StrongConvError, ValueError):
    """Malformed or inconsistent input data."""


class DimensionMismatchError(InputError):
    """Operands live in different ambient dimensions."""


class UnboundedBodyError(InputError):
    """A halfspace list does not describe a bounded body."""


class EmptyBodyError(InputError):
    """A halfspace list describes the empty set where a body is required."""


class NotCoverableError(StrongConvError):
    """Point set is not contained in any translate of the reference body."""


class PreconditionError(StrongConvError):
    """A stated precondition of an operation is violated by the input."""


class SizeCapError(StrongConvError):
    """Enumeration would exceed the configured size cap."""


class KernelInvariantError(StrongConvError):
    """Internal geometric kernel invariant violated (indicates a bug)."""
