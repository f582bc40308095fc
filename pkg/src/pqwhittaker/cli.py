"""Command-line front end.

    pqwhittaker eval whittaker --z 1 --lambda 0 --rho 0.5 --p 0 --q 0 --rep definition --json
    pqwhittaker check all --grid default --format csv
    pqwhittaker table beta_pq --axis p --start 0 --stop 1 --num 5 --x 2 --y 3 --q 0.5

Exit codes: 0 ok, 1 identity failure, 2 usage or domain error, 3 numeric
non-convergence. Errors are written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import time

import numpy as np

from . import verify
from .errors import ConvergenceError, DomainError, PqError, UnknownIdentityError
from .pq_beta import beta_pq
from .pq_hyper import EvalMethod, f_pq, phi_pq
from .pq_whittaker import Representation, whittaker_pq
from .quadrature import QuadConfig
from .scalar_core import ToleranceSpec
from .transforms import laplace_closed, mellin_closed

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NONCONVERGENCE = 0, 1, 2, 3

_DECIMAL = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


class UsageError(PqError):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def decimal(text: str) -> float:
    """Parse a decimal literal; expressions, nan and inf are refused."""
    if not _DECIMAL.match(text.strip()):
        raise argparse.ArgumentTypeError(f"not a decimal literal: {text!r}")
    return float(text)


# ---------------------------------------------------------------- JSON with 17 significant digits


def to_json(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format(obj, ".17g") if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return _json_str(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{_json_str(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _json_str(s):
    return json.dumps(s)


# ---------------------------------------------------------------- evaluation

FUNCTIONS = {
    "beta_pq": ("x", "y", "p", "q"),
    "phi_pq": ("b", "c", "z", "p", "q"),
    "f_pq": ("a", "b", "c", "z", "p", "q"),
    "whittaker": ("z", "lambda", "rho", "p", "q"),
    "mellin_closed": ("z", "lambda", "rho", "r", "s"),
    "laplace_closed": ("delta", "alpha", "mu", "lambda", "rho", "p", "q"),
}

_NUMERIC_FLAGS = ("x", "y", "a", "b", "c", "z", "z_im", "lambda", "rho", "p", "q", "r", "s", "delta", "alpha", "mu")


def _params(args, fn):
    missing = [name for name in FUNCTIONS[fn] if getattr(args, name.replace("-", "_")) is None]
    if missing:
        raise UsageError(f"{fn} needs --{' --'.join(missing)}")
    out = {name: getattr(args, name) for name in FUNCTIONS[fn]}
    if "z" in out and args.z_im:
        out["z_im"] = args.z_im
    return out


def _z(params):
    return complex(params["z"], params.get("z_im", 0.0))


def evaluate(fn, params, args, cfg):
    """Return (value, err_estimate, converged) for one point."""
    if fn == "beta_pq":
        res = beta_pq(params["x"], params["y"], params["p"], params["q"], cfg)
        return complex(res.value), res.err_estimate, res.converged
    if fn == "phi_pq":
        v, info = phi_pq(
            params["b"], params["c"], _z(params), params["p"], params["q"], args.method, cfg, full_output=True
        )
        return v, info.err_estimate, True
    if fn == "f_pq":
        v, info = f_pq(
            params["a"],
            params["b"],
            params["c"],
            _z(params),
            params["p"],
            params["q"],
            args.method,
            cfg,
            full_output=True,
        )
        return v, info.err_estimate, True
    if fn == "whittaker":
        interval = (args.interval_a, args.interval_b)
        v, info = whittaker_pq(
            _z(params),
            params["lambda"],
            params["rho"],
            params["p"],
            params["q"],
            args.rep,
            cfg,
            interval=interval,
            full_output=True,
        )
        return v, info.err_estimate, True
    if fn == "mellin_closed":
        v = mellin_closed(_z(params), params["lambda"], params["rho"], params["r"], params["s"])
        return v, None, True
    v = laplace_closed(
        params["delta"],
        params["alpha"],
        params["mu"],
        params["lambda"],
        params["rho"],
        params["p"],
        params["q"],
        cfg,
        method=args.method,
    )
    return v, None, True


def _record(fn, params, value, err, converged, wall_ms=None):
    rec = {
        "function": fn,
        "params": dict(params),
        "value": {"re": float(value.real), "im": float(value.imag)},
        "err_estimate": None if err is None else float(err),
        "converged": bool(converged),
    }
    if wall_ms is not None:
        rec["wall_time_ms"] = wall_ms
    return rec


def _config(args) -> QuadConfig:
    return QuadConfig(tol=ToleranceSpec(args.tol_abs, args.tol_rel), max_level=args.max_level)


def cmd_eval(args, out) -> int:
    cfg = _config(args)
    params = _params(args, args.function)
    start = time.perf_counter()
    value, err, converged = evaluate(args.function, params, args, cfg)
    wall = (time.perf_counter() - start) * 1e3
    rec = _record(args.function, params, value, err, converged, wall)
    if args.format == "csv":
        _write_csv(out, [rec])
    else:
        out.write(to_json(rec) + "\n")
    return EXIT_OK if converged else EXIT_NONCONVERGENCE


def cmd_table(args, out) -> int:
    cfg = _config(args)
    axis = args.axis.replace("-", "_")
    if axis not in _NUMERIC_FLAGS:
        raise UsageError(f"unknown axis {args.axis!r}")
    if args.num < 1:
        raise UsageError("--num must be positive")
    records = []
    status = EXIT_OK
    for v in np.linspace(args.start, args.stop, args.num):
        setattr(args, axis, float(v))
        params = _params(args, args.function)
        value, err, converged = evaluate(args.function, params, args, cfg)
        if not converged:
            status = EXIT_NONCONVERGENCE
        records.append(_record(args.function, params, value, err, converged))
    if args.format == "json":
        for rec in records:
            out.write(to_json(rec) + "\n")
    else:
        _write_csv(out, records)
    return status


def _write_csv(out, records):
    names = list(records[0]["params"])
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["function", *names, "re", "im", "err_estimate", "converged"])
    for rec in records:
        err = rec["err_estimate"]
        writer.writerow(
            [
                rec["function"],
                *(to_json(rec["params"][n]) for n in names),
                to_json(rec["value"]["re"]),
                to_json(rec["value"]["im"]),
                "" if err is None else to_json(err),
                "true" if rec["converged"] else "false",
            ]
        )


def report_dict(rep: verify.IdentityReport) -> dict:
    return {
        "identity_id": rep.identity_id,
        "points_tested": rep.points_tested,
        "points_skipped": rep.points_skipped,
        "max_abs_err": rep.max_abs_err,
        "max_rel_err": rep.max_rel_err,
        "worst_point": {k: v for k, v in rep.worst_point.items()},
        "passed": rep.passed,
        "notes": rep.notes,
    }


def write_reports_csv(out, reports):
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(verify.IdentityReport.CSV_HEADER)
    for rep in reports:
        writer.writerow(
            [
                rep.identity_id,
                rep.points_tested,
                rep.points_skipped,
                to_json(rep.max_abs_err),
                to_json(rep.max_rel_err),
                rep.worst_point_str(),
                "true" if rep.passed else "false",
            ]
        )


def cmd_check(args, out) -> int:
    cfg = _config(args)
    ids = verify.REQUIRED_IDS if args.identity == "all" else (args.identity,)
    for i in ids:
        verify.get_identity(i)
    reports = [verify.run_identity(i, None, cfg) for i in ids]
    if args.format == "csv":
        write_reports_csv(out, reports)
    else:
        for rep in reports:
            out.write(to_json(report_dict(rep)) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


# ---------------------------------------------------------------- parser


def _add_common(p):
    p.add_argument("--tol-abs", type=decimal, default=1e-12)
    p.add_argument("--tol-rel", type=decimal, default=1e-10)
    p.add_argument("--max-level", type=int, default=12)


def _add_function_flags(p):
    p.add_argument("function", choices=sorted(FUNCTIONS))
    for name in _NUMERIC_FLAGS:
        flag = "--" + name.replace("_", "-")
        p.add_argument(flag, dest=name, type=decimal, default=0.0 if name == "z_im" else None)
    p.add_argument("--rep", choices=[r.value for r in Representation], default="definition")
    p.add_argument("--method", choices=[m.value for m in EvalMethod], default="integral")
    p.add_argument("--interval-a", type=decimal, default=-1.0)
    p.add_argument("--interval-b", type=decimal, default=1.0)
    _add_common(p)


def build_parser():
    parser = _Parser(prog="pqwhittaker", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pe = sub.add_parser("eval", help="evaluate one function at one point")
    _add_function_flags(pe)
    fmt = pe.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    pe.set_defaults(format="json", run=cmd_eval)

    pc = sub.add_parser("check", help="verify identities over parameter grids")
    pc.add_argument("identity", help="identity id or 'all'")
    pc.add_argument("--grid", choices=["default"], default="default")
    pc.add_argument("--format", choices=["csv", "json"], default="json")
    _add_common(pc)
    pc.set_defaults(run=cmd_check)

    pt = sub.add_parser("table", help="evaluate a function along one parameter axis")
    _add_function_flags(pt)
    pt.add_argument("--axis", required=True)
    pt.add_argument("--start", type=decimal, required=True)
    pt.add_argument("--stop", type=decimal, required=True)
    pt.add_argument("--num", type=int, required=True)
    pt.add_argument("--format", choices=["csv", "json"], default="csv")
    pt.set_defaults(run=cmd_table)
    return parser


def _fail(err, code, stream):
    stream.write(to_json({"error": getattr(err, "code", "error"), "message": str(err)}) + "\n")
    return code


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.run(args, out)
    except ConvergenceError as e:
        return _fail(e, EXIT_NONCONVERGENCE, err)
    except (UsageError, DomainError, UnknownIdentityError, PqError) as e:
        return _fail(e, EXIT_USAGE, err)


def run(argv):
    """Run ``main`` capturing stdout and stderr; handy for tests."""
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
