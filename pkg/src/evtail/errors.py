"""Exception hierarchy shared by the library and the command line."""


class EvtailError(Exception):
    """Base class for all errors raised by evtail."""


class DomainError(EvtailError, ValueError):
    """A parameter or data value lies outside the domain of an operation."""


class InsufficientTailError(DomainError):
    """Too few exceedances above a threshold to compute a statistic."""


class DegenerateTailError(DomainError):
    """All exceedances coincide with the threshold (zero mean excess)."""


class FitError(DomainError):
    """Maximum-likelihood fitting is impossible for the given sample."""


class GridError(DomainError):
    """The requested threshold grid collapses for the sample size."""


class DataError(EvtailError):
    """Input data could not be parsed or failed validation."""
