"""Exception hierarchy shared by every module of the package."""


class EchelonError(Exception):
    """Base class for all errors raised by :mod:`echelonmotion`."""


class InputError(EchelonError, ValueError):
    """Malformed or out-of-range input."""


class AcyclicityError(InputError):
    """The cover pairs handed to a poset constructor contain a directed cycle."""


class DomainError(EchelonError, ValueError):
    """An operation was called outside the domain where it is defined."""


class ConstraintError(EchelonError, ValueError):
    """Block constraints for a linear extension cannot be satisfied."""


class SingularMatrixError(EchelonError, ArithmeticError):
    """A matrix that must be invertible is singular."""


class NotALatticeError(DomainError):
    """Some pair of elements lacks a meet or a join."""

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


class NotSemidistributiveError(DomainError):
    """A minimum required by semidistributivity does not exist."""


class NotTrimError(DomainError):
    """The lattice is not extremal or not left modular."""


class CapacityError(EchelonError):
    """A configured enumeration cap would be exceeded."""


class InconsistencyError(EchelonError, AssertionError):
    """Two independent computations that must agree did not.

    Signals either a bug or an input that slipped past a precondition check.
    """


class ParseError(InputError):
    """A serialized payload could not be decoded."""
