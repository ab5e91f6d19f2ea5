"""Exception hierarchy shared by all modules."""


class RotamimeError(Exception):
    """Base class for every error raised by the package."""


class DomainError(RotamimeError, ValueError):
    """Input outside the domain of a map or parameter family."""


class UndefinedPointError(DomainError):
    """The rotation model G was evaluated at its excluded point 0."""


class CriticalPointError(RotamimeError, ArithmeticError):
    """A quantity with F' in the denominator was requested where F' vanishes."""


class NoCriticalPointsError(RotamimeError):
    """Steepness is at or below the threshold where g' = 1 has solutions."""


class BracketError(RotamimeError):
    """A bisection search was given a range without a sign change."""


class NumericError(RotamimeError, ArithmeticError):
    """A root solve or refinement failed to converge."""


class NoOrbitFoundError(NumericError):
    """No recurrence was seen within the allowed period range."""


class DegenerateOrbitError(RotamimeError):
    """Two orbit points coincide, so a spatial order is not defined."""


class DegenerateConfigurationError(RotamimeError):
    """An interval image lands on a basic-interval boundary."""


class CertificateFailed(RotamimeError):
    """The constructive period-n certificate could not be built."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class NoParentsError(DomainError):
    """0/1 and 1/1 have no Farey parents."""
