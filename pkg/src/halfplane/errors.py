"""Exception hierarchy shared by every module."""


class HalfplaneError(Exception):
    """Base class for all toolkit errors."""


class InvalidSpec(HalfplaneError, ValueError):
    """A measure, weight or space violates its invariants."""


class EmptyGrid(HalfplaneError, ValueError):
    pass


class DomainViolation(HalfplaneError, ValueError):
    """A Laplace transform was evaluated outside its half-plane of convergence."""


class Divergent(HalfplaneError, ArithmeticError):
    """A weighted moment integral does not converge.

    ``term`` carries the offending ``(coeff, power, rate)`` triple.
    """

    def __init__(self, message, term=None):
        super().__init__(message)
        self.term = term


class NotInSpace(HalfplaneError):
    """A function has infinite norm in the requested space."""


class NotMultiplier(HalfplaneError):
    """A multiplier candidate maps a test function out of the space."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonFinite(HalfplaneError, ArithmeticError):
    """An integrand produced NaN or infinity."""


class NonPositiveArgument(HalfplaneError, ValueError):
    pass


class DivergentKernel(HalfplaneError, ArithmeticError):
    pass


class UnboundedDetected(HalfplaneError, ArithmeticError):
    """A function (or one of its derivatives) is unbounded on the half-plane."""


# the algebra module names the derivative case separately
UnboundedDerivative = UnboundedDetected


class ConfigError(HalfplaneError):
    def __init__(self, message, path=None, field=None):
        loc = ":".join(str(p) for p in (path, field) if p is not None)
        super().__init__(f"{loc}: {message}" if loc else message)
        self.path = path
        self.field = field


class ToleranceNotMet(HalfplaneError):
    """Quadrature stopped at its subdivision limit above the requested tolerance.

    ``estimate`` and ``error`` carry the best value reached.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
