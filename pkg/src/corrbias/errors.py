"""Exception types raised by corrbias."""


class CorrBiasError(Exception):
    """Base class for all library errors."""


class ParameterDomainError(CorrBiasError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class DegenerateSampleError(CorrBiasError, ValueError):
    """A sample has a constant coordinate, so the correlation is undefined."""


class NonInvertibleError(CorrBiasError, ValueError):
    """A transform has no unique preimage at the requested point."""


class ConvergenceError(CorrBiasError, RuntimeError):
    """A numerical procedure did not reach its tolerance."""


class SeriesConvergenceError(ConvergenceError):
    """The density series was truncated before meeting its tolerance.

    Attributes
    ----------
    partial_sum : float
        Value of the truncated series (without the density prefactor).
    tail_bound : float
        Upper bound on the magnitude of the omitted tail, or ``inf`` when the
        geometric bound is not yet applicable.
    """

    def __init__(self, message, partial_sum, tail_bound):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.tail_bound = tail_bound
