"""Classical scalar kernels.

Log-gamma, Pochhammer symbol, classical beta, and plain power series for
1F1 and 2F1. The series double as p = q = 0 reference values for the
extended functions, so they are evaluated in complex arithmetic throughout.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError, PoleError

# Lanczos approximation, g = 607/128, 14 terms (Numerical Recipes, 3rd ed.).
_LANCZOS_G = 5.24218750000000000
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS_COF = (
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005


@dataclass(frozen=True)
class ToleranceSpec:
    """Mixed absolute/relative tolerance.

    ``a`` and ``b`` are close iff ``|a - b| <= abs_tol + rel_tol * max(|a|, |b|)``.
    A zero tolerance pair demands exact equality.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise DomainError("tolerances must be nonnegative")

    def threshold(self, a, b=0.0):
        return self.abs_tol + self.rel_tol * max(abs(a), abs(b))

    def close(self, a, b):
        return abs(a - b) <= self.threshold(a, b)


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation rule for power series.

    The sum is declared converged once ``consecutive_small`` successive terms
    satisfy ``|term| <= stop_ratio * |partial_sum|``.
    """

    max_terms: int = 500
    stop_ratio: float = 1e-16
    consecutive_small: int = 3

    def __post_init__(self):
        if self.max_terms < 1 or self.consecutive_small < 1:
            raise DomainError("max_terms and consecutive_small must be positive")
        if not self.stop_ratio > 0:
            raise DomainError("stop_ratio must be positive")


DEFAULT_POLICY = SeriesPolicy()


def is_nonpositive_integer(x) -> bool:
    x = complex(x)
    return x.imag == 0 and x.real <= 0 and x.real == math.floor(x.real)


def _lanczos_log_gamma(z: complex) -> complex:
    # valid for Re(z) > 0
    y = z
    tmp = z + _LANCZOS_G
    tmp = (z + 0.5) * cmath.log(tmp) - tmp
    ser = _LANCZOS_C0
    for c in _LANCZOS_COF:
        y += 1
        ser += c / y
    return tmp + cmath.log(_SQRT_2PI * ser / z)


def log_gamma(x) -> complex:
    """Principal branch of ln Gamma(x).

    Real ``x > 0`` gives a result with zero imaginary part. For
    ``Re(x) < 0.5`` the argument is shifted up by the recurrence
    ``ln Gamma(x) = ln Gamma(x + n) - sum_k ln(x + k)``.
    """
    z = complex(x)
    if is_nonpositive_integer(z):
        raise PoleError(f"log_gamma has a pole at {x!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"log_gamma argument must be finite, got {x!r}")
    if z.imag == 0 and z.real > 0:
        return complex(_lanczos_log_gamma(z).real, 0.0)
    shift = 0.0
    while z.real < 0.5:
        shift += cmath.log(z)
        z += 1
    return _lanczos_log_gamma(z) - shift


def pochhammer(lam, n: int) -> complex:
    """Rising factorial lam (lam + 1) ... (lam + n - 1); 1 for n = 0."""
    if n < 0 or int(n) != n:
        raise DomainError(f"pochhammer needs an integer n >= 0, got {n!r}")
    lam = complex(lam)
    out = 1 + 0j
    for k in range(int(n)):
        out *= lam + k
    return out


def beta_classical(x: float, y: float) -> float:
    """B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y) for x, y > 0."""
    if not (x > 0 and y > 0):
        raise DomainError(f"beta_classical needs x, y > 0, got ({x!r}, {y!r})")
    return math.exp((log_gamma(x) + log_gamma(y) - log_gamma(x + y)).real)


def beta_signed(x: float, y: float) -> float:
    """Gamma-ratio beta for real arguments away from the poles.

    Unlike ``beta_classical`` this accepts negative non-integer ``x`` or
    ``y``; the sign comes from the imaginary part of the complex log-gamma.
    """
    for v in (x, y):
        if is_nonpositive_integer(v):
            raise PoleError(f"beta is singular at argument {v!r}")
    if is_nonpositive_integer(x + y):
        raise PoleError(f"beta vanishes identically at x + y = {x + y!r}")
    return cmath.exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y)).real


def _sum_series(next_term, policy: SeriesPolicy, name: str) -> complex:
    total = 1 + 0j
    term = 1 + 0j
    small = 0
    for n in range(policy.max_terms):
        term = next_term(term, n)
        total += term
        if abs(term) <= policy.stop_ratio * abs(total):
            small += 1
            if small >= policy.consecutive_small:
                return total
        else:
            small = 0
    raise ConvergenceError(
        f"{name} series did not converge in {policy.max_terms} terms", total
    )


def kummer_1f1(a, c, z, policy: SeriesPolicy = DEFAULT_POLICY) -> complex:
    """Power series of the confluent hypergeometric function 1F1(a; c; z)."""
    a, c, z = complex(a), complex(c), complex(z)
    if is_nonpositive_integer(c):
        raise PoleError(f"1F1 lower parameter c={c!r} is a nonpositive integer")
    return _sum_series(
        lambda t, n: t * (a + n) / (c + n) * z / (n + 1), policy, "1F1"
    )


def gauss_2f1(a, b, c, z, policy: SeriesPolicy = DEFAULT_POLICY) -> complex:
    """Power series of 2F1(a, b; c; z), restricted to the open unit disk."""
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if abs(z) >= 1:
        raise DomainError(f"2F1 series needs |z| < 1, got |z|={abs(z)!r}")
    if is_nonpositive_integer(c):
        raise PoleError(f"2F1 lower parameter c={c!r} is a nonpositive integer")
    return _sum_series(
        lambda t, n: t * (a + n) * (b + n) / (c + n) * z / (n + 1), policy, "2F1"
    )
