"""Identity verification over parameter grids.

Each registered identity evaluates a left- and right-hand side (or several
pairs) at every admissible grid point, compares them under its own
tolerance, and aggregates the worst errors into an ``IdentityReport``.
Points that violate an identity's preconditions are skipped and counted.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, EmptyGridError, UnknownIdentityError
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
from .quadrature import DEFAULT_CONFIG, QuadConfig, integrate_finite
from .scalar_core import ToleranceSpec, beta_classical, gauss_2f1, kummer_1f1
from .transforms import laplace_closed, laplace_numeric, laplace_s3, mellin_closed, mellin_numeric

FD_STEP = 1e-4


@dataclass(frozen=True)
class ParamGrid:
    """Union of cartesian products of named axes.

    A compound axis name such as ``"lambda,rho"`` takes tuple values and
    binds several parameters at once. Points are produced block by block in
    axis insertion order, which fixes the canonical grid index.
    """

    blocks: tuple

    def __init__(self, *blocks: Mapping[str, Sequence]):
        frozen = []
        for block in blocks:
            axes = {}
            for name, values in block.items():
                values = tuple(values)
                if not values:
                    raise DomainError(f"grid axis {name!r} is empty")
                axes[name] = values
            frozen.append(tuple(axes.items()))
        object.__setattr__(self, "blocks", tuple(frozen))

    def names(self):
        out = []
        for block in self.blocks:
            for name, _ in block:
                for part in name.split(","):
                    if part not in out:
                        out.append(part)
        return out

    def points(self):
        for block in self.blocks:
            names = [name for name, _ in block]
            for combo in itertools.product(*(values for _, values in block)):
                point = {}
                for name, value in zip(names, combo):
                    parts = name.split(",")
                    if len(parts) == 1:
                        point[name] = value
                    else:
                        point.update(zip(parts, value))
                yield point

    def __len__(self):
        return sum(math.prod(len(v) for _, v in block) for block in self.blocks)


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    points_tested: int
    points_skipped: int
    max_abs_err: float
    max_rel_err: float
    worst_point: dict
    passed: bool
    notes: str = ""

    CSV_HEADER = (
        "identity_id",
        "points_tested",
        "points_skipped",
        "max_abs_err",
        "max_rel_err",
        "worst_point",
        "passed",
    )

    def worst_point_str(self):
        return ";".join(f"{k}={_fmt(v)}" for k, v in self.worst_point.items())


def _fmt(v):
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


@dataclass(frozen=True)
class Identity:
    id: str
    formula: str
    axes: tuple
    evaluate: Callable  # (point, cfg) -> list of (lhs, rhs)
    admissible: Callable  # point -> bool
    grid: Callable  # () -> ParamGrid
    tolerance: Callable  # point -> ToleranceSpec
    notes: str = ""


REGISTRY: dict[str, Identity] = {}


def register(id, formula, axes, grid, tol, admissible=lambda pt: True, notes=""):
    tolerance = tol if callable(tol) else (lambda pt, _t=tol: _t)

    def deco(fn):
        REGISTRY[id] = Identity(id, formula, tuple(axes), fn, admissible, grid, tolerance, notes)
        return fn

    return deco


def _rel(rtol):
    return ToleranceSpec(abs_tol=0.0, rel_tol=rtol)


def _tight(cfg: QuadConfig) -> QuadConfig:
    # finite differences amplify quadrature noise by 1/h^n
    tol = ToleranceSpec(min(cfg.tol.abs_tol, 1e-15), min(cfg.tol.rel_tol, 1e-13))
    return replace(cfg, tol=tol)


# ---------------------------------------------------------------- grids

_WHITTAKER_GRID = {
    "z": (0.5, 1.0, 2.0),
    "lambda,rho": ((0.0, 0.5), (0.25, 1.0), (-0.3, 0.8)),
    "p,q": ((0.0, 0.0), (0.5, 0.5), (0.3, 0.9)),
}


def _whittaker_ok(pt):
    lam, rho, p, q = pt["lambda"], pt["rho"], pt["p"], pt["q"]
    return (
        pt["z"] > 0
        and p >= 0
        and q >= 0
        and rho > -0.5
        and (rho - lam > -0.5 or p > 0)
        and (rho + lam > -0.5 or q > 0)
    )


def _hyper_ok(pt):
    b, c, p, q = pt["b"], pt["c"], pt["p"], pt["q"]
    return p >= 0 and q >= 0 and (b > 0 or p > 0) and (c - b > 0 or q > 0)


# ---------------------------------------------------------------- Whittaker identities

_REP_SET = (
    ("definition", Representation.DEFINITION, {}),
    ("int1", Representation.INT1, {}),
    ("int2", Representation.INT2, {}),
    ("int3(-1,1)", Representation.INT3, {"interval": (-1.0, 1.0)}),
    ("int3(0.5,3)", Representation.INT3, {"interval": (0.5, 3.0)}),
    ("int4", Representation.INT4, {}),
    ("int5", Representation.INT5, {}),
    ("reflected", Representation.REFLECTED, {}),
)


def representation_values(pt, cfg=DEFAULT_CONFIG):
    """Value of M at ``pt`` through every representation, keyed by label."""
    return {
        label: whittaker_pq(pt["z"], pt["lambda"], pt["rho"], pt["p"], pt["q"], rep, cfg, **kw)
        for label, rep, kw in _REP_SET
    }


@register(
    "rep-equivalence",
    "integral representations of M_{p,q;lam,rho} agree pairwise",
    ("z", "lambda", "rho", "p", "q"),
    lambda: ParamGrid(_WHITTAKER_GRID),
    _rel(1e-8),
    _whittaker_ok,
)
def _rep_equivalence(pt, cfg):
    vals = list(representation_values(pt, cfg).values())
    return list(itertools.combinations(vals, 2))


@register(
    "remark-reflection",
    "M_{p,q;lam,rho}(z) = z^(rho+1/2) e^(z/2) Phi_{q,p}(rho+lam+1/2; 2rho+1; -z)",
    ("z", "lambda", "rho", "p", "q"),
    lambda: ParamGrid(_WHITTAKER_GRID),
    _rel(1e-8),
    _whittaker_ok,
)
def _remark_reflection(pt, cfg):
    args = (pt["z"], pt["lambda"], pt["rho"], pt["p"], pt["q"])
    return [
        (
            whittaker_pq(*args, Representation.DEFINITION, cfg),
            whittaker_pq(*args, Representation.REFLECTED, cfg),
        )
    ]


@register(
    "theorem2-transform",
    "M_{p,q;lam,rho}(z) = (-1)^(rho+1/2) M_{q,p;-lam,rho}(-z), arg(-1) = pi",
    ("z", "lambda", "rho", "p", "q"),
    lambda: ParamGrid(_WHITTAKER_GRID),
    _rel(1e-8),
    _whittaker_ok,
    notes="on the positive real axis the right side equals the left side times "
    "exp(2 pi i (rho + 1/2)) under arg(-1) = pi; the identity holds there only for "
    "integer rho + 1/2",
)
def _theorem2(pt, cfg):
    args = (pt["z"], pt["lambda"], pt["rho"], pt["p"], pt["q"])
    return [(whittaker_pq(*args, Representation.DEFINITION, cfg), whittaker_reflect(*args, cfg=cfg))]


def _scaled_m(z, lam, rho, p, q, cfg):
    """exp(z/2) z^(-rho-1/2) M_{p,q;lam,rho}(z)."""
    m = whittaker_pq(z, lam, rho, p, q, Representation.INT1, cfg)
    return np.exp(z / 2) * principal_power(z, -rho - 0.5) * m


def central_difference(g, x, n, h=FD_STEP):
    """Second-order central difference for the first or second derivative."""
    if n == 1:
        return (g(x + h) - g(x - h)) / (2 * h)
    if n == 2:
        return (g(x + h) - 2 * g(x) + g(x - h)) / (h * h)
    raise DomainError(f"central differences implemented for n in {{1, 2}}, got {n}")


@register(
    "derivative",
    "d^n/dz^n {e^(z/2) z^(-rho-1/2) M} = (rho-lam+1/2)_n/(2rho+1)_n e^(z/2) z^(-rho-n/2-1/2) M_{lam-n/2,rho+n/2}",
    ("n", "z", "lambda", "rho", "p", "q"),
    lambda: ParamGrid(
        {
            "n": (1, 2),
            "z": (0.5, 1.0, 2.0),
            "lambda,rho": ((0.25, 1.0), (0.0, 0.5)),
            "p,q": ((0.4, 0.6), (0.0, 0.0)),
        }
    ),
    _rel(1e-5),
    lambda pt: pt["n"] in (1, 2) and pt["z"] > 2 * FD_STEP and _whittaker_ok(pt),
)
def _derivative(pt, cfg):
    cfg = _tight(cfg)
    lam, rho, p, q, n, z = pt["lambda"], pt["rho"], pt["p"], pt["q"], pt["n"], pt["z"]
    rhs = whittaker_derivative_formula(z, lam, rho, p, q, n, cfg)
    lhs = central_difference(lambda x: _scaled_m(x, lam, rho, p, q, cfg), z, n)
    return [(lhs, rhs)]


# ---------------------------------------------------------------- transforms


@register(
    "mellin",
    "double Mellin transform in (p, q) of M_{p,q;lam,rho}(z)",
    ("r", "s", "lambda", "rho", "z"),
    lambda: ParamGrid(
        {
            "r,s": ((1.0, 1.0), (1.5, 2.0), (2.0, 1.0)),
            "lambda,rho": ((0.0, 0.5), (0.25, 1.0)),
            "z": (0.5, 1.0),
        }
    ),
    _rel(1e-4),
    lambda pt: (
        pt["r"] > 0
        and pt["s"] > 0
        and pt["z"] > 0
        and pt["rho"] > -0.5
        and pt["rho"] - pt["lambda"] > -0.5
        and pt["rho"] + pt["lambda"] > -0.5
        and pt["rho"] - pt["lambda"] + pt["r"] > -0.5
        and pt["rho"] + pt["lambda"] + pt["s"] > -0.5
    ),
    notes="admissible points need rho-lam+r > -1/2 and rho+lam+s > -1/2 so the beta factor is finite",
)
def _mellin(pt, cfg):
    args = (pt["z"], pt["lambda"], pt["rho"], pt["r"], pt["s"])
    num = mellin_numeric(*args, cfg).check("Mellin double integral")
    return [(num, mellin_closed(*args))]


def _laplace_ok(pt):
    d, a, mu, lam, rho = pt["delta"], pt["alpha"], pt["mu"], pt["lambda"], pt["rho"]
    return (
        mu != 0
        and d + rho > -0.5
        and 2 * a + mu > 0
        and abs(2 * mu / (2 * a + mu)) < 1
        and a + mu / 2 - max(mu, 0.0) > 0
        and _whittaker_ok({**pt, "z": 1.0})
    )


_LAPLACE_COMMON = {
    "lambda,rho": ((0.0, 0.5), (0.25, 1.0)),
    "p,q": ((0.3, 0.6), (0.2, 0.4), (0.0, 0.0)),
}


@register(
    "laplace",
    "int_0^inf z^(delta-1) e^(-alpha z) M_{p,q;lam,rho}(mu z) dz in terms of F_{p,q}",
    ("delta", "alpha", "mu", "lambda", "rho", "p", "q"),
    lambda: ParamGrid(
        {"delta": (1.0, 1.5), "alpha": (2.0, 3.0), "mu": (1.0,), **_LAPLACE_COMMON},
        {"delta": (1.0, 1.5), "alpha": (2.0, 3.0), "mu": (-1.0,), **_LAPLACE_COMMON},
    ),
    lambda pt: _rel(1e-6) if pt["mu"] > 0 else _rel(1e-5),
    _laplace_ok,
)
def _laplace(pt, cfg):
    args = (pt["delta"], pt["alpha"], pt["mu"], pt["lambda"], pt["rho"], pt["p"], pt["q"])
    return [(laplace_numeric(*args, cfg).check("Laplace integral"), laplace_closed(*args, cfg))]


@register(
    "laplace-s3-special",
    "delta = 1, mu = -1: Laplace transform of M_{p,q;lam,rho}(-t), arg(-1) = pi",
    ("alpha", "lambda", "rho", "p", "q"),
    lambda: ParamGrid(
        {
            "alpha": (2.0, 3.0, 4.0),
            "lambda,rho": ((0.0, 0.5), (0.25, 1.0), (-0.3, 0.8)),
            "p,q": ((0.0, 0.0), (0.2, 0.4)),
        }
    ),
    _rel(1e-12),
    lambda pt: pt["alpha"] > 1.5 and _laplace_ok({**pt, "delta": 1.0, "mu": -1.0}),
)
def _laplace_s3(pt, cfg):
    a, lam, rho, p, q = pt["alpha"], pt["lambda"], pt["rho"], pt["p"], pt["q"]
    return [(laplace_closed(1.0, a, -1.0, lam, rho, p, q, cfg), laplace_s3(a, lam, rho, p, q, cfg))]


# ---------------------------------------------------------------- Phi_{p,q}

_PHI_GRID = {
    "b,c": ((1.0, 2.0), (1.5, 3.0), (2.5, 4.0)),
    "z": (-2.0, -0.5, 0.5, 2.0),
    "p": (0.0, 0.25, 1.0),
    "q": (0.0, 0.25, 1.0),
}


@register(
    "phi-transform",
    "Phi_{p,q}(b; c; z) = e^z Phi_{q,p}(c-b; c; -z)",
    ("b", "c", "z", "p", "q"),
    lambda: ParamGrid(_PHI_GRID),
    _rel(1e-8),
    lambda pt: _hyper_ok(pt) and _hyper_ok({**pt, "b": pt["c"] - pt["b"], "p": pt["q"], "q": pt["p"]}),
)
def _phi_transform(pt, cfg):
    b, c, z, p, q = pt["b"], pt["c"], pt["z"], pt["p"], pt["q"]
    return [(phi_pq(b, c, z, p, q, cfg=cfg), np.exp(z) * phi_pq(c - b, c, -z, q, p, cfg=cfg))]


@register(
    "phi-derivative",
    "d^n/dz^n Phi_{p,q}(b; c; z) = (b)_n/(c)_n Phi_{p,q}(b+n; c+n; z)",
    ("n", "b", "c", "z", "p", "q"),
    lambda: ParamGrid(
        {
            "n": (1, 2),
            "b,c": ((1.0, 2.0), (1.5, 3.0)),
            "z": (-0.5, 0.5, 1.0),
            "p,q": ((0.3, 0.6), (0.0, 0.0)),
        }
    ),
    _rel(1e-5),
    lambda pt: pt["n"] in (1, 2) and _hyper_ok(pt),
)
def _phi_derivative(pt, cfg):
    cfg = _tight(cfg)
    b, c, z, p, q, n = pt["b"], pt["c"], pt["z"], pt["p"], pt["q"], pt["n"]
    lhs = central_difference(lambda x: phi_pq(b, c, x, p, q, cfg=cfg), z, n)
    return [(lhs, phi_pq_derivative(b, c, z, p, q, n, cfg=cfg))]


# ---------------------------------------------------------------- reductions and beta


def _reduction_ok(pt):
    case = pt["case"]
    if case == "beta":
        return pt["x"] > 0 and pt["y"] > 0
    if case in ("phi", "f"):
        ok = pt["c"] > pt["b"] > 0
        return ok and (case == "phi" or abs(pt["z"]) < 1)
    if case == "whittaker":
        return _whittaker_ok({**pt, "p": 0.0, "q": 0.0})
    if case == "sinh":
        return pt["z"] > 0
    return False


@register(
    "reduction-classical",
    "p = q = 0 reduces B_{p,q}, Phi_{p,q}, F_{p,q}, M_{p,q;lam,rho} to the classical functions",
    ("case",),
    lambda: ParamGrid(
        {"case": ("beta",), "x": (0.5, 1.0, 2.5, 4.0), "y": (0.5, 1.0, 2.5, 4.0)},
        {"case": ("phi",), "b,c": ((1.0, 2.0), (1.5, 3.0), (2.5, 4.0)), "z": (-2.0, -0.5, 0.5, 2.0)},
        {
            "case": ("f",),
            "a": (0.5, 1.0, 1.1),
            "b,c": ((1.0, 2.0), (1.5, 3.0), (2.5, 4.0)),
            "z": (-0.5, 0.25, 0.5),
        },
        {
            "case": ("whittaker",),
            "z": (0.5, 1.0, 2.0),
            "lambda,rho": ((0.0, 0.5), (0.25, 1.0), (-0.3, 0.8)),
        },
        {"case": ("sinh",), "z": (0.5, 1.0, 2.0)},
    ),
    _rel(1e-10),
    _reduction_ok,
)
def _reduction_classical(pt, cfg):
    case = pt["case"]
    if case == "beta":
        return [(beta_pq(pt["x"], pt["y"], 0.0, 0.0, cfg).value, beta_classical(pt["x"], pt["y"]))]
    if case == "phi":
        b, c, z = pt["b"], pt["c"], pt["z"]
        ref = kummer_1f1(b, c, z)
        return [(phi_pq(b, c, z, method=m, cfg=cfg), ref) for m in EvalMethod]
    if case == "f":
        a, b, c, z = pt["a"], pt["b"], pt["c"], pt["z"]
        ref = gauss_2f1(a, b, c, z)
        return [(f_pq(a, b, c, z, method=m, cfg=cfg), ref) for m in EvalMethod]
    if case == "whittaker":
        z, lam, rho = pt["z"], pt["lambda"], pt["rho"]
        ref = whittaker_classical(z, lam, rho)
        return [
            (whittaker_pq(z, lam, rho, 0.0, 0.0, rep, cfg), ref)
            for rep in (Representation.DEFINITION, Representation.INT1)
        ]
    z = pt["z"]
    return [(whittaker_pq(z, 0.0, 0.5, 0.0, 0.0, Representation.DEFINITION, cfg), 2 * math.sinh(z / 2))]


def phi_p_kernel(b, c, z, p, cfg=DEFAULT_CONFIG):
    """Phi_p(b; c; z) from its own kernel exp(z t - p / (t (1 - t)))."""

    def f(_, t, tc):
        return np.exp((b - 1) * np.log(t) + (c - b - 1) * np.log(tc) + z * t - p / (t * tc))

    return integrate_finite(f, (0.0, 1.0), cfg, with_distances=True).check() / beta_classical(b, c - b)


@register(
    "reduction-p-equals-q",
    "M_{p,p;lam,rho} equals the one-parameter extension built from Phi_p",
    ("z", "lambda", "rho", "p"),
    lambda: ParamGrid(
        {
            "z": (0.5, 1.0, 2.0),
            "lambda,rho": ((0.0, 0.5), (0.25, 1.0), (-0.3, 0.8)),
            "p": (0.25, 0.5, 1.0),
        }
    ),
    _rel(1e-10),
    lambda pt: _whittaker_ok({**pt, "q": pt["p"]}) and pt["rho"] - abs(pt["lambda"]) > -0.5,
)
def _reduction_p(pt, cfg):
    z, lam, rho, p = pt["z"], pt["lambda"], pt["rho"], pt["p"]
    m = whittaker_pq(z, lam, rho, p, p, Representation.DEFINITION, cfg)
    ext = z ** (rho + 0.5) * math.exp(-z / 2) * phi_p_kernel(rho - lam + 0.5, 2 * rho + 1, z, p, cfg)
    return [(m, ext)]


_BETA_GRID = {
    "x": (0.5, 1.0, 1.3, 2.7, 4.0),
    "y": (0.5, 1.0, 1.3, 2.7, 4.0),
    "p": (0.0, 0.4, 0.9),
    "q": (0.0, 0.4, 0.9),
}


def _beta_ok(pt):
    return pt["p"] >= 0 and pt["q"] >= 0 and (pt["x"] > 0 or pt["p"] > 0) and (pt["y"] > 0 or pt["q"] > 0)


@register(
    "beta-symmetry",
    "B_{p,q}(x, y) = B_{q,p}(y, x)",
    ("x", "y", "p", "q"),
    lambda: ParamGrid(_BETA_GRID),
    _rel(1e-10),
    _beta_ok,
)
def _beta_symmetry(pt, cfg):
    x, y, p, q = pt["x"], pt["y"], pt["p"], pt["q"]
    return [(beta_pq(x, y, p, q, cfg).check(), beta_pq(y, x, q, p, cfg).check())]


@register(
    "beta-p-kernel-identity",
    "B_p(x, y) = B_{p,p}(x, y) since exp(-p/(t(1-t))) = exp(-p/t) exp(-p/(1-t))",
    ("x", "y", "p"),
    lambda: ParamGrid({"x": (0.5, 1.3, 2.7), "y": (0.5, 1.3, 2.7), "p": (0.0, 0.4, 0.9)}),
    ToleranceSpec(0.0, 0.0),
    lambda pt: pt["p"] >= 0 and (pt["p"] > 0 or (pt["x"] > 0 and pt["y"] > 0)),
)
def _beta_p_kernel(pt, cfg):
    x, y, p = pt["x"], pt["y"], pt["p"]
    return [(beta_p_reduction(x, y, p, cfg).check(), beta_pq(x, y, p, p, cfg).check())]


# ---------------------------------------------------------------- driver

REQUIRED_IDS = (
    "rep-equivalence",
    "remark-reflection",
    "theorem2-transform",
    "mellin",
    "laplace",
    "laplace-s3-special",
    "derivative",
    "phi-transform",
    "phi-derivative",
    "reduction-classical",
    "reduction-p-equals-q",
    "beta-symmetry",
    "beta-p-kernel-identity",
)


def get_identity(identity_id) -> Identity:
    try:
        return REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentityError(f"unknown identity {identity_id!r}") from None


def default_grid(identity_id) -> ParamGrid:
    return get_identity(identity_id).grid()


def _errors(pairs):
    for lhs, rhs in pairs:
        lhs, rhs = complex(lhs), complex(rhs)
        yield abs(lhs - rhs), max(abs(lhs), abs(rhs))


def run_identity(identity_id, grid: ParamGrid | None = None, cfg: QuadConfig = DEFAULT_CONFIG) -> IdentityReport:
    """Sweep one identity over ``grid`` (its default grid when omitted)."""
    ident = get_identity(identity_id)
    grid = ident.grid() if grid is None else grid
    missing = [a for a in ident.axes if a not in grid.names()]
    if missing:
        raise DomainError(f"grid for {identity_id!r} lacks axes {missing}")
    tested = skipped = 0
    max_abs = max_rel = 0.0
    worst: dict = {}
    worst_key = -1.0
    passed = True
    for pt in grid.points():
        if not ident.admissible(pt):
            skipped += 1
            continue
        tested += 1
        tol = ident.tolerance(pt)
        try:
            pairs = ident.evaluate(pt, cfg)
        except ConvergenceError:
            pairs = None
        if pairs is None:
            d_max, r_max, ok = math.inf, math.inf, False
        else:
            d_max = r_max = 0.0
            ok = True
            for d, scale in _errors(pairs):
                d_max = max(d_max, d)
                r = d / scale if scale > 0 else (0.0 if d == 0 else math.inf)
                r_max = max(r_max, r)
                ok &= d <= tol.abs_tol + tol.rel_tol * scale
        passed &= ok
        max_abs = max(max_abs, d_max)
        max_rel = max(max_rel, r_max)
        if r_max > worst_key:
            worst_key = r_max
            worst = dict(pt)
    if tested == 0:
        raise EmptyGridError(f"no admissible points for {identity_id!r} ({skipped} skipped)")
    return IdentityReport(identity_id, tested, skipped, max_abs, max_rel, worst, passed, ident.notes)


def run_all(cfg: QuadConfig = DEFAULT_CONFIG, ids=REQUIRED_IDS):
    return [run_identity(i, None, cfg) for i in ids]
