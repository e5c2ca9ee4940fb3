"""Exception types raised across the package."""


class MiepotError(Exception):
    """Base class for all package errors."""


class ParameterDomainError(MiepotError, ValueError):
    """A physical or numerical parameter lies outside its allowed domain."""


class ConfigurationError(MiepotError, ValueError):
    """Unsupported unit system, potential family or option combination."""


class UnsupportedOrderError(ParameterDomainError):
    """Requested expansion order beyond the tabulated terms."""


class NoBoundStateError(ParameterDomainError):
    """The potential has no attractive Coulomb tail, hence no bound levels."""


class SeriesRangeError(ParameterDomainError):
    """Argument outside the range where the plain power series is trusted."""


class PoleError(ParameterDomainError):
    """Lower parameter of 1F1 is a non-positive integer."""


class OracleError(MiepotError, RuntimeError):
    """The finite-difference eigensolver failed to converge."""
