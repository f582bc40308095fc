"""Mellin and Laplace-type integrals of the (p,q)-Whittaker function.

Each identity has a closed-form evaluator and an independent numerical
evaluator of its defining integral, so the two can be compared.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import DomainError
from .pq_hyper import EvalMethod, f_pq
from .pq_whittaker import Representation, _check_z, check_whittaker_params, principal_power, whittaker_pq
from .quadrature import (
    DEFAULT_CONFIG,
    QuadConfig,
    QuadResult,
    integrate_2d_semi_infinite,
    integrate_semi_infinite,
)
from .scalar_core import DEFAULT_POLICY, SeriesPolicy, beta_classical, kummer_1f1, log_gamma

# exp(-800) is far below any tolerance in use; integrands past it are zeroed
_NEGLIGIBLE_EXPONENT = 800.0


def check_mellin_orders(lam, rho, r, s):
    """Conditions for the Mellin closed form.

    r, s > 0, rho +- lam > -1/2 (p and q run down to 0, so no damping
    relaxes them), and both arguments of B(rho+r-lam+1/2, rho+s+lam+1/2)
    positive.
    """
    r, s = float(r), float(s)
    if not (r > 0 and s > 0):
        raise DomainError(f"Mellin orders need r, s > 0, got r={r!r}, s={s!r}")
    check_whittaker_params(lam, rho)
    if not (rho - lam + r + 0.5 > 0 and rho + lam + s + 0.5 > 0):
        raise DomainError("need rho - lam + r > -1/2 and rho + lam + s > -1/2")


def mellin_closed(z, lam, rho, r, s, policy: SeriesPolicy = DEFAULT_POLICY) -> complex:
    """Closed form of int_0^inf int_0^inf p^(r-1) q^(s-1) M_{p,q;lam,rho}(z) dp dq:

        z^(rho+1/2) e^(-z/2) Gamma(r) Gamma(s) B(rho+r-lam+1/2, rho+s+lam+1/2)
        / B(rho-lam+1/2, rho+lam+1/2) * 1F1(rho+r-lam+1/2; 2rho+r+s+1; z)
    """
    check_mellin_orders(lam, rho, r, s)
    _check_z(z, "raise")
    z = complex(z)
    gammas = cmath.exp(log_gamma(r) + log_gamma(s)).real
    ratio = beta_classical(rho + r - lam + 0.5, rho + s + lam + 0.5) / beta_classical(
        rho - lam + 0.5, rho + lam + 0.5
    )
    return (
        principal_power(z, rho + 0.5)
        * cmath.exp(-z / 2)
        * gammas
        * ratio
        * kummer_1f1(rho + r - lam + 0.5, 2 * rho + r + s + 1, z, policy)
    )


def mellin_numeric(z, lam, rho, r, s, cfg: QuadConfig = DEFAULT_CONFIG, order="pq") -> QuadResult:
    """Nested exp-sinh quadrature of the Mellin double integral.

    The integrand M_{p,q;lam,rho}(z) is evaluated by the first integral
    representation, batched over the inner abscissae. ``order="pq"`` puts p
    on the outside, ``"qp"`` swaps the order. Restricted to real z > 0.
    """
    check_mellin_orders(lam, rho, r, s)
    z = complex(z)
    if z.imag != 0 or not z.real > 0:
        raise DomainError(f"mellin_numeric needs real z > 0, got {z!r}")
    if order not in ("pq", "qp"):
        raise DomainError(f"order must be 'pq' or 'qp', got {order!r}")
    r, s = float(r), float(s)

    def f(outer, inner):
        p, q = (outer, inner) if order == "pq" else (inner, outer)
        out = np.zeros(np.shape(inner), dtype=complex)
        # M_{p,q}(z) <= e^(-p-q) * O(1), so far nodes contribute nothing
        live = (np.asarray(p) + np.asarray(q)) <= _NEGLIGIBLE_EXPONENT
        live = np.broadcast_to(live, out.shape)
        if live.any():
            pl = p if np.ndim(p) == 0 else p[live]
            ql = q if np.ndim(q) == 0 else q[live]
            m = whittaker_pq(z, lam, rho, pl, ql, Representation.INT1, cfg)
            out[live] = np.power(pl, r - 1) * np.power(ql, s - 1) * m
        return out

    return integrate_2d_semi_infinite(f, cfg)


def check_laplace_params(delta, alpha, mu, lam, rho, p=0.0, q=0.0):
    delta, alpha, mu = float(delta), float(alpha), float(mu)
    if not all(math.isfinite(v) for v in (delta, alpha, mu)):
        raise DomainError("delta, alpha, mu must be finite")
    if mu == 0:
        raise DomainError("mu must be nonzero")
    check_whittaker_params(lam, rho, p, q)
    if not delta + rho > -0.5:
        raise DomainError(f"need delta + rho > -1/2, got {delta + rho!r}")
    if not abs(2 * mu / (2 * alpha + mu)) < 1 or not 2 * alpha + mu > 0:
        raise DomainError("need |2 mu / (2 alpha + mu)| < 1 with 2 alpha + mu > 0")
    if not alpha + mu / 2 - max(mu, 0.0) > 0:
        raise DomainError("need alpha + mu/2 - max(mu, 0) > 0 for the z-integral to converge")


def laplace_closed(
    delta,
    alpha,
    mu,
    lam,
    rho,
    p=0.0,
    q=0.0,
    cfg: QuadConfig = DEFAULT_CONFIG,
    policy: SeriesPolicy = DEFAULT_POLICY,
    method=EvalMethod.INTEGRAL,
) -> complex:
    """Closed form of int_0^inf z^(delta-1) e^(-alpha z) M_{p,q;lam,rho}(mu z) dz:

        mu^(rho+1/2) Gamma(delta+rho+1/2) / (alpha+mu/2)^(delta+rho+1/2)
        * F_{p,q}(delta+rho+1/2, rho-lam+1/2; 2rho+1; 2mu/(2alpha+mu))

    mu^(rho+1/2) is complex for mu < 0 (arg(-1) = pi).
    """
    check_laplace_params(delta, alpha, mu, lam, rho, p, q)
    e = delta + rho + 0.5
    zf = 2 * mu / (2 * alpha + mu)
    head = principal_power(mu, rho + 0.5) * cmath.exp(log_gamma(e) - e * math.log(alpha + mu / 2))
    return head * f_pq(e, rho - lam + 0.5, 2 * rho + 1, zf, p, q, method, cfg, policy)


def laplace_s3(
    alpha,
    lam,
    rho,
    p=0.0,
    q=0.0,
    cfg: QuadConfig = DEFAULT_CONFIG,
    policy: SeriesPolicy = DEFAULT_POLICY,
    method=EvalMethod.INTEGRAL,
) -> complex:
    """Laplace transform of M_{p,q;lam,rho}(-t) (the delta = 1, mu = -1 case):

        (-1)^(rho+1/2) Gamma(rho+3/2) / (alpha-1/2)^(rho+3/2)
        * F_{p,q}(rho+3/2, rho-lam+1/2; 2rho+1; 2/(1-2alpha))

    Needs alpha > 3/2, the binding form of |2 mu/(2 alpha + mu)| < 1 here.
    """
    alpha = float(alpha)
    if not alpha > 1.5:
        raise DomainError(f"need alpha > 3/2, got {alpha!r}")
    check_laplace_params(1.0, alpha, -1.0, lam, rho, p, q)
    e = rho + 1.5
    head = principal_power(-1.0, rho + 0.5) * cmath.exp(log_gamma(e) - e * math.log(alpha - 0.5))
    return head * f_pq(e, rho - lam + 0.5, 2 * rho + 1, 2 / (1 - 2 * alpha), p, q, method, cfg, policy)


def laplace_numeric(
    delta, alpha, mu, lam, rho, p=0.0, q=0.0, cfg: QuadConfig = DEFAULT_CONFIG
) -> QuadResult:
    """exp-sinh quadrature of int_0^inf z^(delta-1) e^(-alpha z) M_{p,q;lam,rho}(mu z) dz.

    M is evaluated by its first integral representation, batched over the
    quadrature nodes; for mu < 0 its argument sits on the negative axis and
    the power (mu z)^(rho+1/2) takes arg = pi.
    """
    check_laplace_params(delta, alpha, mu, lam, rho, p, q)
    delta, alpha, mu = float(delta), float(alpha), float(mu)
    decay = alpha + mu / 2 - max(mu, 0.0)

    def f(zs):
        out = np.zeros(zs.shape, dtype=complex)
        live = decay * zs <= _NEGLIGIBLE_EXPONENT
        if live.any():
            zl = zs[live]
            m = whittaker_pq(mu * zl, lam, rho, p, q, Representation.INT1, cfg, on_cut="arg-pi")
            out[live] = np.power(zl, delta - 1) * np.exp(-alpha * zl) * m
        return out

    return integrate_semi_infinite(f, cfg)
