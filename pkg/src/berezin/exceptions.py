"""Exception hierarchy shared by every module of the toolkit."""


class BerezinError(Exception):
    """Base class for all toolkit errors."""


class DomainError(BerezinError, ValueError):
    """An argument lies outside the domain of the operation."""


class NumericError(BerezinError, ArithmeticError):
    """A numerical step failed (non-finite value, solver breakdown).

    ``where`` carries the offending node or evaluation point when known.
    """

    def __init__(self, message, where=None, module=None):
        super().__init__(message)
        self.where = where
        self.module = module


class ResolutionError(BerezinError):
    """A discretisation is too coarse for the requested accuracy."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required
