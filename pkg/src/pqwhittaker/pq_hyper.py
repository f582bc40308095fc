"""(p,q)-extended confluent and Gauss hypergeometric functions.

Both are available through their defining series, whose n-th coefficient is
``B_{p,q}(b+n, c-b) / B(b, c-b)`` (one quadrature per term), and through
the single-quadrature integral representation over (0, 1). The integral is
the default; the series exists as an independent cross-check.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .errors import ConvergenceError, DomainError
from .pq_beta import beta_pq, check_endpoint_exponents, log_kernel
from .quadrature import DEFAULT_CONFIG, QuadConfig, QuadResult, integrate_finite
from .scalar_core import DEFAULT_POLICY, SeriesPolicy, beta_signed, pochhammer


class EvalMethod(str, enum.Enum):
    SERIES = "series"
    INTEGRAL = "integral"


def check_hyper_params(b, c, p, q):
    """Validate (b, c) against the damping parameters.

    The undamped condition is c > b > 0. A positive ``p`` lifts b > 0 and a
    positive ``q`` lifts c - b > 0, because the exponential kernel then
    dominates the corresponding endpoint power.
    """
    b, c = float(b), float(c)
    check_endpoint_exponents(b, c - b, p, q, what="hypergeometric parameters")
    return beta_signed(b, c - b)


def _finish(res: QuadResult, norm, what, full_output):
    value = res.check(what) / norm
    if full_output:
        info = QuadResult(value, res.err_estimate / abs(norm), res.evaluations, True, res.levels)
        return value, info
    return value


def _series(b, c, z, p, q, weight, cfg, policy, what):
    """sum_n B_{p,q}(b+n, c-b)/B(b, c-b) * weight(n) * z^n / n!"""
    norm = check_hyper_params(b, c, p, q)
    cache: dict[tuple, QuadResult] = {}
    total = 0j
    err = 0.0
    evals = 0
    power = 1 + 0j  # z^n / n!
    small = 0
    for n in range(policy.max_terms):
        key = (b + n, c - b, p, q)
        if key not in cache:
            cache[key] = beta_pq(b + n, c - b, p, q, cfg)
        res = cache[key]
        res.check(f"{what} series coefficient {n}")
        evals += res.evaluations
        scale = weight(n) * power / norm
        term = res.value * scale
        total += term
        err += res.err_estimate * abs(scale)
        if abs(term) <= policy.stop_ratio * abs(total):
            small += 1
            if small >= policy.consecutive_small:
                return total, QuadResult(total, err + abs(term), evals, True, n + 1)
        else:
            small = 0
        power *= z / (n + 1)
    raise ConvergenceError(f"{what} series did not converge in {policy.max_terms} terms", total)


def phi_pq(
    b,
    c,
    z,
    p=0.0,
    q=0.0,
    method=EvalMethod.INTEGRAL,
    cfg: QuadConfig = DEFAULT_CONFIG,
    policy: SeriesPolicy = DEFAULT_POLICY,
    full_output=False,
):
    """Phi_{p,q}(b; c; z), the (p,q)-confluent hypergeometric function.

    Parameters
    ----------
    b, c : float
        Real parameters with c > b > 0 (relaxed per endpoint when p or q is
        positive, see ``check_hyper_params``).
    z : complex
        Any finite argument.
    p, q : float
        Nonnegative damping parameters.
    method : EvalMethod or str
        ``"integral"`` (default) or ``"series"``.
    full_output : bool
        Also return a ``QuadResult`` describing the evaluation.

    Returns
    -------
    complex, or (complex, QuadResult) with ``full_output``.
    """
    method = EvalMethod(method)
    b, c, p, q = float(b), float(c), float(p), float(q)
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("z must be finite")
    if method is EvalMethod.SERIES:
        value, info = _series(b, c, z, p, q, lambda n: 1.0, cfg, policy, "Phi_pq")
        return (value, info) if full_output else value
    norm = check_hyper_params(b, c, p, q)

    def f(_, t, tc):
        return np.exp(log_kernel(t, tc, b - 1.0, c - b - 1.0, p, q) + z * t)

    res = integrate_finite(f, (0.0, 1.0), cfg, with_distances=True)
    return _finish(res, norm, "Phi_pq integral", full_output)


def f_pq(
    a,
    b,
    c,
    z,
    p=0.0,
    q=0.0,
    method=EvalMethod.INTEGRAL,
    cfg: QuadConfig = DEFAULT_CONFIG,
    policy: SeriesPolicy = DEFAULT_POLICY,
    full_output=False,
):
    """F_{p,q}(a, b; c; z), the (p,q)-Gauss hypergeometric function.

    The series needs |z| < 1. The integral representation uses the principal
    branch of (1 - z t)^(-a) and is valid for z off the ray [1, inf).
    """
    method = EvalMethod(method)
    a, z = complex(a), complex(z)
    b, c, p, q = float(b), float(c), float(p), float(q)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("z must be finite")
    if method is EvalMethod.SERIES:
        if abs(z) >= 1:
            raise DomainError(f"F_pq series needs |z| < 1, got |z|={abs(z)!r}")
        value, info = _series(
            b, c, z, p, q, lambda n: complex(pochhammer(a, n)), cfg, policy, "F_pq"
        )
        return (value, info) if full_output else value
    if z.imag == 0 and z.real >= 1:
        raise DomainError(f"F_pq integral needs z off [1, inf), got z={z!r}")
    norm = check_hyper_params(b, c, p, q)

    def f(_, t, tc):
        return np.exp(log_kernel(t, tc, b - 1.0, c - b - 1.0, p, q) - a * np.log(1 - z * t))

    res = integrate_finite(f, (0.0, 1.0), cfg, with_distances=True)
    return _finish(res, norm, "F_pq integral", full_output)


def phi_pq_derivative(
    b,
    c,
    z,
    p=0.0,
    q=0.0,
    n=1,
    method=EvalMethod.INTEGRAL,
    cfg: QuadConfig = DEFAULT_CONFIG,
    policy: SeriesPolicy = DEFAULT_POLICY,
):
    """n-th z-derivative of Phi_{p,q}(b; c; z) via the parameter-shift rule

        d^n/dz^n Phi_{p,q}(b; c; z) = (b)_n / (c)_n * Phi_{p,q}(b+n; c+n; z).
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"derivative order must be a nonnegative integer, got {n!r}")
    n = int(n)
    ratio = pochhammer(b, n) / pochhammer(c, n)
    return ratio * phi_pq(b + n, c + n, z, p, q, method, cfg, policy)
