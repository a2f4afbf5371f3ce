"""Shared exception types.

The split matters for the command line front end: bad or malformed
input maps to exit code 1, while mathematically meaningful failure
(a non-invertible class, a missing invariance, a genuine obstruction)
maps to exit code 2.
"""


class InvalidData(ValueError):
    """Input fails a structural precondition (shape, range, well-definedness)."""


class CapExceeded(RuntimeError):
    """An enumeration produced more results than the configured cap."""


class BudgetExceeded(RuntimeError):
    """A cohomology request is larger than the configured size guard."""


class NotInvertible(ArithmeticError):
    """An inverse was requested for something that has none."""


class CocycleViolation(ValueError):
    """A purported cocycle fails the cocycle identity."""


class UnsupportedOddOnly(NotImplementedError):
    """The requested construction is only implemented for odd order."""


class NonCentralElement(ValueError):
    """A group element required to be central is not."""


class NotInvariant(ValueError):
    """Data that must be fixed by a group action is not."""
