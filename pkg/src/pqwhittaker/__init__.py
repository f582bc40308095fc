"""Numerical (p,q)-extended beta, hypergeometric and Whittaker functions."""

from .errors import (
    BranchCutError,
    ConvergenceError,
    DomainError,
    EmptyGridError,
    NonFiniteIntegrandError,
    PoleError,
    PqError,
    UnknownIdentityError,
)
from .pq_beta import beta_p_reduction, beta_pq
from .pq_hyper import EvalMethod, f_pq, phi_pq, phi_pq_derivative
from .pq_whittaker import (
    Representation,
    principal_power,
    whittaker_classical,
    whittaker_derivative_formula,
    whittaker_pq,
    whittaker_reflect,
)
from .quadrature import (
    DEFAULT_CONFIG,
    FiniteInterval,
    QuadConfig,
    QuadResult,
    integrate_2d_semi_infinite,
    integrate_finite,
    integrate_semi_infinite,
)
from .scalar_core import (
    SeriesPolicy,
    ToleranceSpec,
    beta_classical,
    gauss_2f1,
    kummer_1f1,
    log_gamma,
    pochhammer,
)
from .transforms import laplace_closed, laplace_numeric, laplace_s3, mellin_closed, mellin_numeric
from .verify import IdentityReport, ParamGrid, default_grid, run_all, run_identity

__version__ = "0.1.0"
