"""The (p,q)-extended beta function.

    B_{p,q}(x, y) = int_0^1 t^(x-1) (1-t)^(y-1) exp(-p/t - q/(1-t)) dt

evaluated by tanh-sinh quadrature. A positive ``p`` damps the t -> 0
endpoint strongly enough that any real ``x`` is admissible there, and
likewise ``q`` at t -> 1.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .quadrature import DEFAULT_CONFIG, QuadConfig, QuadResult, integrate_finite


def check_pq(p, q):
    p_arr, q_arr = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    if not (np.all(np.isfinite(p_arr)) and np.all(np.isfinite(q_arr))):
        raise DomainError("p and q must be finite")
    if np.any(p_arr < 0) or np.any(q_arr < 0):
        raise DomainError(f"p and q must be nonnegative, got p={p!r}, q={q!r}")


def check_endpoint_exponents(x, y, p, q, what="beta"):
    """Integrability of t^(x-1) (1-t)^(y-1) exp(-p/t - q/(1-t)) on (0, 1)."""
    check_pq(p, q)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DomainError(f"{what}: exponents must be finite")
    if np.any(np.asarray(p) == 0) and not x > 0:
        raise DomainError(f"{what}: need x > 0 when p = 0 (got x={x!r})")
    if np.any(np.asarray(q) == 0) and not y > 0:
        raise DomainError(f"{what}: need y > 0 when q = 0 (got y={y!r})")


def log_kernel(t, tc, xm1, ym1, p, q):
    """log of t^xm1 (1-t)^ym1 exp(-p/t - q/(1-t)); ``tc`` is 1 - t.

    Array-valued ``p``/``q`` add trailing batch axes to the node axis.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    batch = np.broadcast_shapes(p.shape, q.shape)
    if batch:
        extra = (1,) * len(batch)
        t = t.reshape((-1,) + extra)
        tc = tc.reshape((-1,) + extra)
    out = xm1 * np.log(t) + ym1 * np.log(tc)
    # skip the division when the damping is absent so 0 * inf never appears
    if np.any(p != 0):
        out = out - p / t
    if np.any(q != 0):
        out = out - q / tc
    return out


def beta_pq(x, y, p=0.0, q=0.0, cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """B_{p,q}(x, y) as a ``QuadResult`` with a real, positive ``value``.

    Non-convergence is reported through ``converged`` rather than raised.

    >>> round(beta_pq(2, 3).value, 12)
    0.083333333333
    """
    x, y, p, q = float(x), float(y), float(p), float(q)
    check_endpoint_exponents(x, y, p, q)

    def f(_, t, tc):
        return np.exp(log_kernel(t, tc, x - 1.0, y - 1.0, p, q))

    res = integrate_finite(f, (0.0, 1.0), cfg, with_distances=True)
    return QuadResult(res.value.real, res.err_estimate, res.evaluations, res.converged, res.levels)


def beta_p_reduction(x, y, p=0.0, cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """One-parameter extension B_p(x, y) with kernel exp(-p / (t (1-t))).

    Since 1/(t(1-t)) = 1/t + 1/(1-t) this is B_{p,p}(x, y) exactly.
    """
    return beta_pq(x, y, p, p, cfg)
