"""Exception types shared by the numerical modules."""


class DomainError(ValueError):
    """Argument outside the region where a function is defined."""


class PoleError(DomainError):
    """Argument sits on a pole (non-positive integer for gamma-type kernels)."""


class DivergenceError(ArithmeticError):
    """The requested value is infinite, e.g. K(k) at k = 1."""


class ConvergenceError(ArithmeticError):
    """An iterative or series method failed to converge.

    ``estimate`` carries the best value reached, when one exists.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class ToleranceNotMet(ConvergenceError):
    """Adaptive quadrature exhausted its budget before reaching ``tol``."""


class UnboundedKernelError(ArithmeticError):
    """A cotangent-weighted integrand is singular on the reduction interval."""
