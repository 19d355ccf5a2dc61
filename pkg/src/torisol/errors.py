"""Exception hierarchy shared by every torisol module."""

from __future__ import annotations


class TorisolError(Exception):
    """Base class for all errors raised by torisol."""


class InvalidParams(TorisolError, ValueError):
    pass


class ParseError(TorisolError, ValueError):
    pass


class NoSolution(TorisolError):
    """No admissible solution exists; ``degenerate`` holds the zero solution if any."""

    def __init__(self, message: str, degenerate=None):
        super().__init__(message)
        self.degenerate = degenerate


class OutOfRange(TorisolError, ValueError):
    pass


class UnsupportedDimension(TorisolError):
    pass


class NotPrenormalized(TorisolError, ValueError):
    pass


class WrongRank(TorisolError, ValueError):
    pass


class WrongCount(TorisolError, ValueError):
    pass


class NotInKernel(TorisolError, ValueError):
    pass


class IsGenerator(TorisolError):
    """The requested (b0, l) pair is itself one of the emitted generators."""


class RankTooHigh(TorisolError):
    pass


class SearchBudgetExceeded(TorisolError):
    """A bounded search ran out of budget; ``partial`` carries what was explored."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class DegreeCapExceeded(TorisolError):
    """Completion skipped work above the degree cap.

    ``partial`` is the truncated rewrite system. Every rule in it belongs to the
    ideal, so a zero normal form computed with it is still a sound membership
    certificate; a nonzero one proves nothing.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
