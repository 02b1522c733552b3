"""Exception hierarchy shared by every module of the package."""


class HulthenError(Exception):
    """Base class for all errors raised by ``hulthen_dirac``."""

    #: short machine-readable reason, used by the CLI
    reason = "error"


class InvalidParameterError(HulthenError, ValueError):
    reason = "invalid parameter"


class SubThresholdEnergyError(HulthenError, ValueError):
    reason = "sub-threshold energy"


class DerivativeDiscontinuityError(HulthenError, ValueError):
    reason = "derivative discontinuity"


class SpecialFunctionDomainError(HulthenError, ValueError):
    reason = "special-function pole"


class HypergeometricConvergenceError(HulthenError, ArithmeticError):
    reason = "hypergeometric non-convergence"

    def __init__(self, message, iterations=None, last_term=None):
        super().__init__(message)
        self.iterations = iterations
        self.last_term = last_term


class DegenerateMatchingError(HulthenError, ArithmeticError):
    reason = "degenerate matching"


class UnitarityError(HulthenError, ArithmeticError):
    reason = "unitarity violated"


class IntegrationError(HulthenError, RuntimeError):
    reason = "oracle failure"
