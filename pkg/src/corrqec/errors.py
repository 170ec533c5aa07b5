"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A model parameter violates its validity range."""


class StrongCouplingError(ArithmeticError):
    """A closed-form flow solution hit its strong-coupling pole."""


class SingularExponentError(ArithmeticError):
    """A closed form is singular at this exponent; use numerical integration."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class ModelError(ValueError):
    """A stochastic model is ill-posed (e.g. covariance not positive semidefinite)."""


class PerturbativeRangeWarning(UserWarning):
    """A computed probability left the range where the perturbative reading is valid."""
