"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the CLI puts in
its error JSON.
"""


class PqError(Exception):
    code = "error"


class DomainError(PqError, ValueError):
    code = "domain"


class PoleError(DomainError):
    code = "pole"


class BranchCutError(DomainError):
    code = "branch-cut"


class NonFiniteIntegrandError(PqError, FloatingPointError):
    code = "non-finite"


class ConvergenceError(PqError, ArithmeticError):
    """Raised when a series or quadrature fails to meet its stop criterion.

    ``result`` holds the best estimate reached (a ``QuadResult`` for
    quadrature, the partial sum for series).
    """

    code = "non-convergence"

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class UnknownIdentityError(PqError, KeyError):
    code = "unknown-identity"

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class EmptyGridError(PqError, ValueError):
    code = "empty-grid"
