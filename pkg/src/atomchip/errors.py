"""Exception hierarchy shared by the library and the command line front-end."""


class AtomChipError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(AtomChipError, ValueError):
    """Malformed experiment configuration (bad schema, unit or value)."""

    def __init__(self, message, path=""):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class RegimeError(AtomChipError, ValueError):
    """The requested physics lies outside the validity range of the model."""


class SingularPointError(RegimeError):
    """A field was requested on a wire axis, where it diverges."""


class NumericError(AtomChipError, ArithmeticError):
    """A numerical routine failed to reach its tolerance."""


class QuadratureError(NumericError):
    def __init__(self, message, estimate=None, abserr=None):
        self.estimate = estimate
        self.abserr = abserr
        super().__init__(message)


class ResolutionError(NumericError):
    """Spectral grid too coarse: the input spectrum is not negligible at the grid edge."""


class NoRootError(NumericError):
    pass
