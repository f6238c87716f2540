"""Exception types shared across the package."""


class NikulinError(Exception):
    """Base class for all package-specific errors."""


class InvalidGenusError(NikulinError, ValueError):
    """Genus outside the admissible range (g >= 2)."""


class ParityError(NikulinError, ValueError):
    """Doubled nodal coefficients mix parities; the class is not in the lattice."""


class OutOfRangeError(NikulinError, ValueError):
    """An argument violates a stated precondition."""


class InvalidBoundsError(NikulinError, ValueError):
    """Search bounds must be strictly positive integers."""


class InternalInconsistencyError(NikulinError, RuntimeError):
    """Two internal routes to the same quantity disagree; surfaced, never absorbed."""


class DerivationFailureError(NikulinError, RuntimeError):
    """The pushforward engine disagrees with a closed-form expression."""


class TheoremCheckError(NikulinError, RuntimeError):
    """A reduced divisor class does not match the expected coefficient tuple."""


class FormulaViolationError(NikulinError, RuntimeError):
    """An exactness guarantee failed (non-integral quotient or parity break)."""
