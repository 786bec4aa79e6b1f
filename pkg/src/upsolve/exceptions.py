class UpsolveError(Exception):
    """Base class for errors raised by this package."""


class ParseError(UpsolveError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class AssumptionViolation(UpsolveError):
    """An instance fails one of the solver's standing assumptions.

    ``assumption`` is 1 (M(theta) sufficient on the interval) or 2 (the LCP is
    feasible at every theta).  ``theta`` is the probe point where it showed.
    """

    def __init__(self, assumption, message, theta=None):
        self.assumption = assumption
        self.theta = theta
        super().__init__(f"assumption {assumption} violated: {message}")


class SingularBasisError(UpsolveError, ArithmeticError):
    """The basis columns of ``[I | -M]`` are singular."""


class InvariantError(UpsolveError, AssertionError):
    """An internal consistency check failed; indicates a bug."""
