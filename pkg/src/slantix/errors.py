"""Exception hierarchy shared by every slantix module."""


class SlantixError(Exception):
    """Base class for all slantix errors."""


class DomainError(SlantixError, ValueError):
    """Argument outside the domain where the intrinsic equations are defined."""


class SingularParameterError(SlantixError, ValueError):
    """Parameter value at which a closed form has a vanishing denominator."""


class QuadratureError(SlantixError, ArithmeticError):
    """Adaptive quadrature failed to reach its tolerance."""


class FrameError(SlantixError, ValueError):
    """A Frenet triad is not orthonormal and right-handed."""


class MissingFrameError(SlantixError, LookupError):
    """A curve sample carries no usable Frenet frame."""


class StepError(SlantixError, ValueError):
    """Integrator step configuration is unusable for the requested range."""


class TooFewSamplesError(SlantixError, ValueError):
    """Not enough samples to apply a finite-difference stencil."""


class DegenerateError(SlantixError, ArithmeticError):
    """Quantity undefined because curvature (or a derivative) vanishes."""


class ParameterMismatchError(SlantixError, ValueError):
    """Two curves cannot be compared over a common parameter range."""
