"""Double-exponential quadrature.

tanh-sinh on finite intervals, exp-sinh on (0, inf), and a nested exp-sinh
rule on the quadrant (0, inf)^2. All three refine by halving the step until
two successive level estimates agree.

Integrands are vectorised: they receive a 1-D array of abscissae and return
an array whose first axis matches it. Extra trailing axes are allowed and
integrated componentwise, which lets one quadrature serve a whole batch of
parameter values (the convergence test then applies to every component).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .errors import ConvergenceError, DomainError, NonFiniteIntegrandError
from .scalar_core import ToleranceSpec

_HALF_PI = 0.5 * math.pi
# beyond |t| = 7 every node is saturated for both maps in double precision
_T_MAX = 7.0
# exp-sinh exponent bound: keeps abscissae inside (1e-304, 1e304)
_EXP_SINH_LIMIT = 700.0
# a non-finite sample is tolerated only past a tail this small
_TAIL_EPS = 1e-20


@dataclass(frozen=True)
class QuadConfig:
    """Quadrature settings.

    Level 0 uses step ``1 / base_points_per_level`` in the transformed
    variable; each further level halves the step. Convergence is not declared
    before ``min_level``.
    """

    tol: ToleranceSpec = field(default_factory=ToleranceSpec)
    max_level: int = 12
    base_points_per_level: int = 2
    min_level: int = 2

    def __post_init__(self):
        if self.max_level < 3:
            raise DomainError(f"max_level must be >= 3, got {self.max_level}")
        if self.base_points_per_level < 1:
            raise DomainError("base_points_per_level must be positive")
        if not 0 <= self.min_level <= self.max_level:
            raise DomainError("min_level must lie in [0, max_level]")


DEFAULT_CONFIG = QuadConfig()


@dataclass(frozen=True)
class FiniteInterval:
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.b > self.a):
            raise DomainError(f"need finite a < b, got ({self.a!r}, {self.b!r})")


@dataclass(frozen=True)
class QuadResult:
    """Outcome of a quadrature run.

    ``value`` is a complex scalar, or an array for batched integrands, in
    which case ``err_estimate`` is an array of the same shape.
    """

    value: Any
    err_estimate: Any
    evaluations: int
    converged: bool
    levels: int = 0

    def check(self, what="quadrature"):
        """Return ``value``, raising ``ConvergenceError`` if not converged."""
        if not self.converged:
            raise ConvergenceError(
                f"{what} did not converge (err_estimate={np.max(self.err_estimate):.3g})",
                self,
            )
        return self.value


def _finite_nodes(t, a, b, exact_distances):
    u = _HALF_PI * np.sinh(t)
    with np.errstate(over="ignore"):
        e_pos = np.exp(2.0 * u)
        e_neg = np.exp(-2.0 * u)
        cu = np.cosh(u)
        width = b - a
        dl = width / (1.0 + e_neg)
        dr = width / (1.0 + e_pos)
        w = width * _HALF_PI * np.cosh(t) / (2.0 * cu * cu)
    x = np.where(t < 0, a + dl, b - dr)
    keep = (dl > 0) & (dr > 0) & (w > 0)
    if not exact_distances:
        # x itself rounds onto an endpoint before the distances underflow
        keep &= (x > a) & (x < b)
    return x, dl, dr, w, keep


def _semi_infinite_nodes(t):
    s = _HALF_PI * np.sinh(t)
    keep = np.abs(s) <= _EXP_SINH_LIMIT
    s = np.where(keep, s, 0.0)
    x = np.exp(s)
    w = x * _HALF_PI * np.cosh(t)
    return x, w, keep


class _Engine:
    """Level-doubling driver shared by the finite and semi-infinite rules."""

    def __init__(self, sample, cfg: QuadConfig):
        # sample(t) -> (weighted values with node axis first, mask of used nodes)
        self.sample = sample
        self.cfg = cfg
        self.h0 = 1.0 / cfg.base_points_per_level
        self.lo = -math.inf
        self.hi = math.inf
        self.evaluations = 0

    def _level0(self):
        n = int(math.floor(_T_MAX / self.h0))
        t = np.arange(-n, n + 1) * self.h0
        wf, used = self.sample(t)
        self.evaluations += int(used.sum())
        bad = self._bad(wf, len(t))
        mag = self._magnitudes(wf, bad, len(t))
        # level-0 profile, used to judge whether a refined node sits in a negligible tail
        self.t0, self.mag0, self.scale = t, mag, mag.max()
        if bad.any():
            self._set_cutoffs(t, mag, bad)
            wf = np.where(self._broadcast((t >= self.lo) & (t <= self.hi), wf), wf, 0)
        return wf.sum(axis=0)

    @staticmethod
    def _bad(wf, n):
        bad = ~np.isfinite(wf)
        return bad.reshape(n, -1).any(axis=1) if wf.ndim > 1 else bad

    def _magnitudes(self, wf, bad, n):
        mag = np.abs(np.where(self._broadcast(~bad, wf), wf, 0))
        return mag.reshape(n, -1).max(axis=1) if mag.ndim > 1 else mag

    def _negligible(self, t):
        """True if the level-0 nodes bracketing ``t`` are both negligible or non-finite."""
        i = int(np.searchsorted(self.t0, t))
        around = self.mag0[max(i - 1, 0) : i + 1]
        return bool(np.all(around <= _TAIL_EPS * self.scale))

    @staticmethod
    def _broadcast(mask, like):
        return mask.reshape(mask.shape + (1,) * (like.ndim - 1))

    def _set_cutoffs(self, t, mag, bad):
        scale = mag.max()
        centre = len(t) // 2
        for side, idx in ((1, range(centre, len(t))), (-1, range(centre, -1, -1))):
            prev = None
            for j in idx:
                if bad[j]:
                    if prev is None or mag[prev] > _TAIL_EPS * scale:
                        raise NonFiniteIntegrandError(
                            f"integrand is not finite at transformed node t={t[j]:.6g}"
                        )
                    if side > 0:
                        self.hi = t[prev]
                    else:
                        self.lo = t[prev]
                    break
                prev = j

    def _level(self, k):
        h = self.h0 / 2**k
        n = int(math.floor(_T_MAX / h))
        j = np.arange(-n, n + 1)
        j = j[j % 2 != 0]
        t = j * h
        t = t[(t >= self.lo) & (t <= self.hi)]
        wf, used = self.sample(t)
        self.evaluations += int(used.sum())
        bad = self._bad(wf, len(t))
        if bad.any():
            for tb in t[bad]:
                if tb == 0 or not self._negligible(tb):
                    raise NonFiniteIntegrandError(
                        f"integrand is not finite at transformed node t={tb:.6g}"
                    )
                if tb > 0:
                    self.hi = min(self.hi, tb)
                else:
                    self.lo = max(self.lo, tb)
            keep = (t > self.lo) & (t < self.hi) & ~bad
            wf = np.where(self._broadcast(keep, wf), wf, 0)
        return wf.sum(axis=0)

    def run(self) -> QuadResult:
        cfg = self.cfg
        total = self._level0()
        estimate = self.h0 * total
        err = None
        for k in range(1, cfg.max_level + 1):
            total = total + self._level(k)
            new = (self.h0 / 2**k) * total
            err = np.abs(new - estimate)
            estimate = new
            thresh = cfg.tol.abs_tol + cfg.tol.rel_tol * np.abs(estimate)
            if k >= cfg.min_level and np.all(err <= thresh):
                return self._result(estimate, err, True, k)
        return self._result(estimate, err, False, cfg.max_level)

    def _result(self, value, err, converged, k):
        if np.ndim(value) == 0:
            value = complex(value)
            err = float(err)
        return QuadResult(value, err, self.evaluations, converged, k)


def _as_samples(values, n):
    v = np.asarray(values, dtype=complex)
    if v.ndim == 0:
        v = np.broadcast_to(v, (n,))
    if v.shape[0] != n:
        raise ValueError(f"integrand returned leading dimension {v.shape[0]}, expected {n}")
    return v


def integrate_finite(
    f: Callable,
    iv: FiniteInterval | tuple = (0.0, 1.0),
    cfg: QuadConfig = DEFAULT_CONFIG,
    *,
    with_distances: bool = False,
) -> QuadResult:
    """tanh-sinh quadrature of ``f`` over the open interval ``iv``.

    With ``with_distances=True`` the integrand is called as
    ``f(x, x - a, b - x)``, the distances being computed without
    cancellation; integrands with endpoint singularities should use them.
    Endpoints are never sampled.
    """
    if not isinstance(iv, FiniteInterval):
        iv = FiniteInterval(*iv)
    a, b = float(iv.a), float(iv.b)

    def sample(t):
        x, dl, dr, w, keep = _finite_nodes(t, a, b, with_distances)
        x, dl, dr, wk = x[keep], dl[keep], dr[keep], w[keep]
        with np.errstate(all="ignore"):
            vals = _as_samples(f(x, dl, dr) if with_distances else f(x), len(x))
            wf = vals * wk.reshape((-1,) + (1,) * (vals.ndim - 1))
        out = np.zeros((len(t),) + vals.shape[1:], dtype=complex)
        out[keep] = wf
        return out, keep

    return _Engine(sample, cfg).run()


def integrate_semi_infinite(f: Callable, cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """exp-sinh quadrature of ``f`` over (0, inf).

    The substitution ``u = exp(pi/2 sinh t)`` gives double-exponential decay
    at both ends, so algebraic behaviour at 0 and algebraic or faster decay
    at infinity are both handled. Samples in a negligible tail that overflow
    to a non-finite value truncate the rule there.
    """

    def sample(t):
        x, w, keep = _semi_infinite_nodes(t)
        xk, wk = x[keep], w[keep]
        with np.errstate(all="ignore"):
            vals = _as_samples(f(xk), len(xk))
            wf = vals * wk.reshape((-1,) + (1,) * (vals.ndim - 1))
        out = np.zeros((len(t),) + vals.shape[1:], dtype=complex)
        out[keep] = wf
        return out, keep

    return _Engine(sample, cfg).run()


def integrate_2d_semi_infinite(
    f: Callable,
    cfg: QuadConfig = DEFAULT_CONFIG,
    inner_cfg: QuadConfig | None = None,
) -> QuadResult:
    """Nested exp-sinh quadrature over (0, inf)^2.

    ``f(p, q)`` is called with a scalar outer abscissa ``p`` and an array of
    inner abscissae ``q``. The error estimate adds the outer level difference
    to the weighted sum of the inner error estimates. Any inner failure to
    converge marks the whole result unconverged.
    """
    inner_cfg = inner_cfg or cfg
    state = {"evals": 0, "inner_ok": True}

    def outer(p_arr):
        vals = np.empty(len(p_arr), dtype=complex)
        errs = np.empty(len(p_arr))
        for i, p in enumerate(p_arr):
            p = float(p)
            res = integrate_semi_infinite(lambda q: f(p, q), inner_cfg)
            state["evals"] += res.evaluations
            state["inner_ok"] &= res.converged
            vals[i] = res.value
            errs[i] = res.err_estimate
        inner_err_by_p.update(zip(p_arr.tolist(), errs.tolist()))
        return vals

    inner_err_by_p: dict[float, float] = {}
    res = integrate_semi_infinite(outer, cfg)
    # inner error propagated through the outer rule's weights
    ps = np.array(sorted(inner_err_by_p))
    errs = np.array([inner_err_by_p[p] for p in ps])
    h = (1.0 / cfg.base_points_per_level) / 2**res.levels
    t = np.arcsinh(np.log(ps) / _HALF_PI) if len(ps) else ps
    w = ps * _HALF_PI * np.cosh(t)
    propagated = float(h * np.sum(w * errs))
    return QuadResult(
        res.value,
        float(res.err_estimate) + propagated,
        state["evals"],
        res.converged and state["inner_ok"],
        res.levels,
    )
