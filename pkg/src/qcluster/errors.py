"""Exception hierarchy shared by all qcluster modules."""

from __future__ import annotations


class QClusterError(Exception):
    """Base class for every error raised by the library."""


class InvalidArgs(QClusterError, ValueError):
    """Malformed input: wrong lengths, indices out of range, k > n, ..."""


class DivisionByZero(QClusterError, ZeroDivisionError):
    pass


class NotDivisible(QClusterError, ArithmeticError):
    """No exact quotient exists in the ring (or the step cap was exceeded)."""


class ZeroElement(QClusterError, ValueError):
    """Operation needs a nonzero element."""


class Incompatible(QClusterError, ValueError):
    """``Btilde^T Lambda`` is not of the form ``[D | 0]`` with positive ``D``."""

    def __init__(self, message: str, entry: tuple[int, int] | None = None):
        super().__init__(message)
        self.entry = entry


class NotSkewSymmetrizable(QClusterError, ValueError):
    pass


class NotAcyclic(QClusterError, ValueError):
    pass


class NotPrincipal(QClusterError, ValueError):
    pass


class NotAdmissible(InvalidArgs):
    """Exchange matrix is acyclic but not listed in an admissible order."""


class NotInSpan(QClusterError, ArithmeticError):
    pass


class FindingError(QClusterError, AssertionError):
    """An identity the library checks did not hold.

    These signal either an implementation bug or a counterexample to a
    claimed identity; callers should report them rather than swallow them.
    """


class InvariantViolation(FindingError):
    pass


class MismatchWithDirectComputation(FindingError):
    pass


class NotASingleTerm(FindingError):
    pass


class ShapeMismatch(FindingError):
    pass


class SupportViolation(FindingError):
    pass


class AccumulationMismatch(FindingError):
    pass
