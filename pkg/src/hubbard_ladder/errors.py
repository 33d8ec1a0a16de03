"""Exception hierarchy shared by all modules.

Errors are split by how the caller should react: ``DomainError`` means the
inputs violate a documented contract (fix the call), the remaining classes
signal numerical trouble (size limits, non-convergence, truncation, or a
failed time step).
"""


class LadderError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LadderError, ValueError):
    """Input violates a documented precondition or invariant."""


class CapacityError(LadderError):
    """Requested problem size exceeds the documented hard caps."""


class ConvergenceError(LadderError):
    """Iterative solver failed to converge; message carries diagnostics."""


class AccuracyError(LadderError):
    """A truncated computation did not pass its convergence check."""


class PropagationError(LadderError):
    """Time propagation failed; message reports the failing time."""


class DiagnosticError(LadderError):
    """A consistency check inside a numerical routine was inconclusive."""
