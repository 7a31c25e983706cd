"""Exception hierarchy shared by all modules."""


class ChoquetError(Exception):
    """Base class for every error raised by this package."""


class KindMismatch(ChoquetError):
    pass


class LatticeUnsupported(ChoquetError):
    """Lattice operation requested on an ordered but non-lattice kind (sym)."""


class NoConvergence(ChoquetError):
    pass


class NegativeWeight(ChoquetError):
    pass


class NonPositiveTotal(ChoquetError):
    pass


class NotPSD(ChoquetError):
    pass


class EmptySubset(ChoquetError):
    pass


class GroundMismatch(ChoquetError):
    pass


class UnknownBuiltin(ChoquetError):
    pass


class NotMonotone(ChoquetError):
    """Extracted set function fails monotonicity; carries the violations."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class GridMisaligned(ChoquetError):
    pass


class NotComparable(ChoquetError):
    pass


class FormatError(ChoquetError):
    """Malformed capacity, function or report file."""
