"""Exception hierarchy shared by all modules."""


class GFTError(Exception):
    """Base class for every error raised by gftomega."""


class NormalizationError(GFTError, ValueError):
    """A series does not satisfy f(0) = 0, f'(0) = 1 exactly."""


class EmptyInput(GFTError, ValueError):
    pass


class ZeroConstantTerm(GFTError, ZeroDivisionError):
    pass


class DomainError(GFTError, ValueError):
    """A parameter lies outside the domain of the requested object."""


class InvalidLambda(DomainError):
    pass


class NotCertified(GFTError):
    """The function failed the membership test a bound check relies on."""


class PoleEncountered(GFTError, ArithmeticError):
    """A functional's denominator vanished on the scanned circle.

    ``theta`` and ``r`` locate the offending point; ``last_good_radius``
    is filled in by radius searches.
    """

    def __init__(self, message, *, r=None, theta=None, last_good_radius=None):
        super().__init__(message)
        self.r = r
        self.theta = theta
        self.last_good_radius = last_good_radius


class NoSignChange(GFTError, ValueError):
    pass


class MaxIterations(GFTError, RuntimeError):
    pass


class UnknownEquation(GFTError, KeyError):
    pass
