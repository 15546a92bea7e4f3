"""Exception types shared across the package."""


class ChebmeasError(Exception):
    """Base class for all package errors."""


class DomainError(ChebmeasError, ValueError):
    """A parameter lies outside the domain of a formula or constructor."""


class OddDegree(ChebmeasError, ValueError):
    """A zero form of odd degree has no real trigonometric counterpart."""


class EvenLength(ChebmeasError, ValueError):
    """A coefficient sequence that must have odd length (2n+1) does not."""


class ClosureViolated(ChebmeasError, ValueError):
    """Zero angles do not satisfy the closure condition sum = 2*pi*N."""


class InvalidThreshold(ChebmeasError, ValueError):
    """A level-set threshold is not positive."""


class ZeroHarmonic(ChebmeasError, ValueError):
    """A leading harmonic with A = B = 0 cannot be normalized."""
