"""Exception classes raised by the library.

Each class maps to one CLI exit code (see :mod:`infbranch.cli`).
"""


class InfBranchError(Exception):
    """Base class for all library errors."""


class ParseError(InfBranchError, ValueError):
    """Polynomial text could not be parsed.

    Attributes
    ----------
    position : int
        Zero-based character offset where the problem was detected.
    """

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DegeneratePolynomialError(InfBranchError, ValueError):
    """A zero or constant polynomial was given where a curve is required."""


class RootFindingError(InfBranchError, ArithmeticError):
    """Simultaneous iteration did not converge.

    Attributes
    ----------
    residuals : list of float
        |p(z)| at the final iterates.
    """

    def __init__(self, message, residuals=()):
        super().__init__(message)
        self.residuals = list(residuals)


class ExpansionError(InfBranchError, ArithmeticError):
    """Newton polygon recursion failed (depth cap or ambiguous root clusters)."""


class InsufficientTruncationError(InfBranchError, ValueError):
    """A branch was not expanded deep enough for the requested operation."""


class EmptySampleError(InfBranchError, ValueError):
    """The Hausdorff estimator collected no points for one of the curves."""


class SelectorError(InfBranchError, IndexError):
    """A branch or leaf index is out of range."""
