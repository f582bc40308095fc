"""The (p,q)-Whittaker function

    M_{p,q;lam,rho}(z) = z^(rho+1/2) exp(-z/2) Phi_{p,q}(rho-lam+1/2; 2rho+1; z)

with its integral representations, the reflected form, the transformation
formula, and the derivative formula.

Complex powers use the principal branch with arg in (-pi, pi] and
arg(-x) = pi for x > 0. Arguments on the closed negative real axis are
rejected unless the caller passes ``on_cut="arg-pi"``.
"""

from __future__ import annotations

import cmath
import enum
import math

import numpy as np

from .errors import BranchCutError, DomainError
from .pq_hyper import EvalMethod, check_hyper_params, phi_pq
from .quadrature import (
    DEFAULT_CONFIG,
    FiniteInterval,
    QuadConfig,
    QuadResult,
    integrate_finite,
    integrate_semi_infinite,
)
from .scalar_core import DEFAULT_POLICY, SeriesPolicy, kummer_1f1, pochhammer


class Representation(str, enum.Enum):
    DEFINITION = "definition"
    INT1 = "int1"
    INT2 = "int2"
    INT3 = "int3"
    INT4 = "int4"
    INT5 = "int5"
    REFLECTED = "reflected"


INTEGRAL_REPS = (
    Representation.INT1,
    Representation.INT2,
    Representation.INT3,
    Representation.INT4,
    Representation.INT5,
)


def _arg(base):
    """Principal argument with arg(-x) = +pi for x > 0, including -0.0 imaginary parts."""
    base = np.asarray(base, dtype=complex)
    return np.where((base.imag == 0) & (base.real < 0), math.pi, np.angle(base))


def principal_power(base, exponent):
    """base**exponent on the principal branch, arg(base) in (-pi, pi].

    ``0**s`` is 0 when Re(s) > 0 and an error otherwise. Accepts scalars or
    arrays (broadcast together).

    >>> abs(principal_power(-1, 0.5) - 1j) < 1e-15
    True
    """
    b = np.asarray(base, dtype=complex)
    s = np.asarray(exponent, dtype=complex)
    zero = b == 0
    if np.any(zero & (np.broadcast_to(s, np.broadcast_shapes(b.shape, s.shape)).real <= 0)):
        raise DomainError("zero base needs an exponent with positive real part")
    with np.errstate(divide="ignore", invalid="ignore"):
        logb = np.log(np.abs(b)) + 1j * _arg(b)
        out = np.exp(s * logb)
    out = np.where(zero, 0j, out)
    if out.ndim == 0:
        out = complex(out)
        # exact for the common real-exponent, positive-base case
        if b.imag == 0 and b.real > 0 and s.imag == 0:
            out = complex(float(b.real) ** float(s.real), 0.0)
    return out


def check_whittaker_params(lam, rho, p=0.0, q=0.0):
    """Validate (lam, rho); returns B(rho-lam+1/2, rho+lam+1/2).

    Requires rho > -1/2 and rho +- lam > -1/2; the rho - lam bound is lifted
    when p > 0 and the rho + lam bound when q > 0.
    """
    lam, rho = float(lam), float(rho)
    if not (math.isfinite(lam) and math.isfinite(rho)):
        raise DomainError("lambda and rho must be finite")
    if not rho > -0.5:
        raise DomainError(f"need rho > -1/2, got rho={rho!r}")
    return check_hyper_params(rho - lam + 0.5, 2 * rho + 1, p, q)


def _check_z(z, on_cut):
    if on_cut not in ("raise", "arg-pi"):
        raise DomainError(f"on_cut must be 'raise' or 'arg-pi', got {on_cut!r}")
    za = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(za)):
        raise DomainError("z must be finite")
    if on_cut == "raise" and np.any((za.imag == 0) & (za.real <= 0)):
        raise BranchCutError(f"z={z!r} lies on the branch cut (-inf, 0]")
    return za


def _col(v, nb):
    return v.reshape((-1,) + (1,) * nb)


def _integral(rep, z, lam, rho, p, q, norm, cfg, interval):
    zb, pb, qb = np.broadcast_arrays(
        np.asarray(z, dtype=complex), np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    )
    nb = zb.ndim
    e_lo = rho - lam - 0.5  # exponent at the p-damped end
    e_hi = rho + lam - 0.5  # exponent at the q-damped end
    s = rho + 0.5

    if rep is Representation.INT1:

        def f(_, t, tc):
            t, tc = _col(t, nb), _col(tc, nb)
            # exp(-z/2) folded in so |integrand| <= exp(|z|/2)
            return np.exp(
                e_lo * np.log(t) + e_hi * np.log(tc) + zb * (t - 0.5) - pb / t - qb / tc
            )

        res = integrate_finite(f, (0.0, 1.0), cfg, with_distances=True)
        pref = principal_power(zb, s)
    elif rep is Representation.INT2:

        def f(_, u, uc):
            u, uc = _col(u, nb), _col(uc, nb)
            return np.exp(e_hi * np.log(u) + e_lo * np.log(uc) - zb * u - pb / uc - qb / u)

        res = integrate_finite(f, (0.0, 1.0), cfg, with_distances=True)
        pref = principal_power(zb, s) * np.exp(zb / 2)
    elif rep is Representation.INT3:
        iv = interval if isinstance(interval, FiniteInterval) else FiniteInterval(*interval)
        width = iv.b - iv.a

        def f(_, da, db):
            da, db = _col(da, nb), _col(db, nb)
            return np.exp(
                e_lo * np.log(da)
                + e_hi * np.log(db)
                + zb * da / width
                - pb * width / da
                - qb * width / db
            )

        res = integrate_finite(f, iv, cfg, with_distances=True)
        pref = width ** (-2 * rho) * principal_power(zb, s) * np.exp(-zb / 2)
    elif rep is Representation.INT4:

        def f(u):
            u = _col(u, nb)
            return np.exp(
                e_lo * np.log(u)
                - (2 * rho + 1) * np.log1p(u)
                + zb / (1 + 1 / u)
                - (pb / u + pb)
                - (qb + qb * u)
            )

        res = integrate_semi_infinite(f, cfg)
        pref = principal_power(zb, s) * np.exp(-zb / 2)
    elif rep is Representation.INT5:

        def f(_, onep, onem):
            onep, onem = _col(onep, nb), _col(onem, nb)
            return np.exp(
                e_lo * np.log(onep)
                + e_hi * np.log(onem)
                + zb * onep / 2
                - 2 * pb / onep
                - 2 * qb / onem
            )

        res = integrate_finite(f, (-1.0, 1.0), cfg, with_distances=True)
        pref = 2.0 ** (-2 * rho) * principal_power(zb, s) * np.exp(-zb / 2)
    else:  # pragma: no cover - guarded by the caller
        raise DomainError(f"not an integral representation: {rep}")

    value = pref * res.check(f"Whittaker {rep.value}") / norm
    err = np.abs(pref) * res.err_estimate / abs(norm)
    if np.ndim(value) == 0:
        value, err = complex(value), float(err)
    return value, QuadResult(value, err, res.evaluations, True, res.levels)


def _pointwise(fn, z, p, q):
    """Apply a scalar evaluator over broadcast (z, p, q)."""
    zb, pb, qb = np.broadcast_arrays(
        np.asarray(z, dtype=complex), np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    )
    if zb.ndim == 0:
        return fn(complex(zb), float(pb), float(qb))
    out = np.empty(zb.shape, dtype=complex)
    err = np.empty(zb.shape)
    evals = 0
    for idx in np.ndindex(zb.shape):
        v, info = fn(complex(zb[idx]), float(pb[idx]), float(qb[idx]))
        out[idx], err[idx] = v, info.err_estimate
        evals += info.evaluations
    return out, QuadResult(out, err, evals, True, 0)


def whittaker_pq(
    z,
    lam,
    rho,
    p=0.0,
    q=0.0,
    rep=Representation.DEFINITION,
    cfg: QuadConfig = DEFAULT_CONFIG,
    *,
    interval=(-1.0, 1.0),
    method=None,
    policy: SeriesPolicy = DEFAULT_POLICY,
    on_cut="raise",
    full_output=False,
):
    """M_{p,q;lam,rho}(z) through the chosen representation.

    Parameters
    ----------
    z : complex or array
        Argument off the branch cut (-inf, 0]. With ``on_cut="arg-pi"``
        negative reals are accepted and the power z^(rho+1/2) takes
        arg(z) = pi.
    lam, rho : float
        Order parameters.
    p, q : float or array
        Nonnegative damping parameters; arrays broadcast against ``z``.
    rep : Representation or str
        ``definition`` evaluates Phi_{p,q} by its series (override with
        ``method``); ``reflected`` uses Phi_{q,p} at -z by quadrature; the
        ``int*`` tags use the corresponding integral. ``int3`` runs over
        ``interval`` (default (-1, 1)).
    full_output : bool
        Also return a ``QuadResult`` with the error estimate.
    """
    rep = Representation(rep)
    za = _check_z(z, on_cut)
    norm = check_whittaker_params(lam, rho, p, q)
    lam, rho = float(lam), float(rho)
    s = rho + 0.5

    if rep in INTEGRAL_REPS:
        value, info = _integral(rep, za, lam, rho, p, q, norm, cfg, interval)
    else:
        if rep is Representation.DEFINITION:
            meth = EvalMethod(method or EvalMethod.SERIES)

            def one(zz, pp, qq):
                phi, info = phi_pq(
                    s - lam, 2 * rho + 1, zz, pp, qq, meth, cfg, policy, full_output=True
                )
                pref = principal_power(zz, s) * cmath.exp(-zz / 2)
                return pref * phi, QuadResult(
                    pref * phi, abs(pref) * info.err_estimate, info.evaluations, True, info.levels
                )

        else:
            meth = EvalMethod(method or EvalMethod.INTEGRAL)

            def one(zz, pp, qq):
                phi, info = phi_pq(
                    s + lam, 2 * rho + 1, -zz, qq, pp, meth, cfg, policy, full_output=True
                )
                pref = principal_power(zz, s) * cmath.exp(zz / 2)
                return pref * phi, QuadResult(
                    pref * phi, abs(pref) * info.err_estimate, info.evaluations, True, info.levels
                )

        value, info = _pointwise(one, za, p, q)
    return (value, info) if full_output else value


def whittaker_reflect(
    z,
    lam,
    rho,
    p=0.0,
    q=0.0,
    cfg: QuadConfig = DEFAULT_CONFIG,
    rep=Representation.INT1,
    **kwargs,
):
    """Right-hand side of the transformation formula

        M_{p,q;lam,rho}(z) = (-1)^(rho+1/2) M_{q,p;-lam,rho}(-z),

    with both (-1)^(rho+1/2) and (-z)^(rho+1/2) on the principal branch,
    arg(-1) = pi. For real positive z the right-hand side therefore carries
    an extra factor exp(2 pi i (rho + 1/2)) relative to the left-hand side;
    the two agree on the real axis only when rho + 1/2 is an integer, and
    everywhere in the open upper half-plane.
    """
    za = _check_z(z, "raise")
    check_whittaker_params(lam, rho, p, q)
    s = float(rho) + 0.5
    inner = whittaker_pq(-za, -lam, rho, q, p, rep, cfg, on_cut="arg-pi", **kwargs)
    return principal_power(-1.0, s) * inner


def whittaker_derivative_formula(
    z,
    lam,
    rho,
    p=0.0,
    q=0.0,
    n=1,
    cfg: QuadConfig = DEFAULT_CONFIG,
    rep=Representation.INT1,
    **kwargs,
):
    """n-th derivative of exp(z/2) z^(-rho-1/2) M_{p,q;lam,rho}(z), evaluated as

        (rho-lam+1/2)_n / (2rho+1)_n * exp(z/2) z^(-rho-n/2-1/2) M_{p,q;lam-n/2,rho+n/2}(z).
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"derivative order must be a nonnegative integer, got {n!r}")
    n = int(n)
    check_whittaker_params(lam, rho, p, q)
    ratio = pochhammer(rho - lam + 0.5, n) / pochhammer(2 * rho + 1, n)
    m = whittaker_pq(z, lam - n / 2, rho + n / 2, p, q, rep, cfg, **kwargs)
    za = np.asarray(z, dtype=complex)
    out = ratio * np.exp(za / 2) * principal_power(za, -rho - n / 2 - 0.5) * m
    return complex(out) if np.ndim(out) == 0 else out


def whittaker_classical(z, lam, rho, policy: SeriesPolicy = DEFAULT_POLICY):
    """Classical M_{lam,rho}(z) = z^(rho+1/2) exp(-z/2) 1F1(rho-lam+1/2; 2rho+1; z)."""
    _check_z(z, "raise")
    check_whittaker_params(lam, rho)
    z = complex(z)
    return (
        principal_power(z, rho + 0.5)
        * cmath.exp(-z / 2)
        * kummer_1f1(rho - lam + 0.5, 2 * rho + 1, z, policy)
    )
