"""Exception hierarchy for the ptcoh package.

Argument and input problems subclass ``ValueError`` so callers can catch
them the usual way; runtime numeric self-check failures are a separate
branch because they signal a bug or a degenerate computation rather than
bad input.
"""


class PtcohError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(PtcohError, ValueError):
    """Operands have incompatible or non-qubit dimensions."""


class StateError(PtcohError, ValueError):
    """A density matrix fails a physicality invariant."""


class NumericsError(PtcohError, RuntimeError):
    """An internal numeric invariant was violated during a computation."""
