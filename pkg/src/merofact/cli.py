"""Command-line front end.  Every command prints one JSON report on stdout."""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import dirichlet, eulerops, registry, verify
from .config import EvalConfig, from_environment
from .errors import DivergenceDetected, MerofactError, MethodInapplicable
from .meromorphic import (
    FunctionHandle,
    pp_contour,
    pp_symmetric,
    residue_contour,
    residue_symmetric,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^(?P<re>{_NUM})?(?:(?P<im>[+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i)?$")


def parse_complex(text: str) -> complex:
    """Parse `a`, `bi`, `a+bi` or `(a+bi)` with decimal components."""
    s = text.strip().replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    m = _COMPLEX_RE.match(s)
    if not s or not m or (m.group("re") is None and m.group("im") is None):
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}; use a, bi or a+bi")
    re_part = float(m.group("re")) if m.group("re") else 0.0
    im_text = m.group("im")
    if im_text is None:
        im_part = 0.0
    elif im_text in ("", "+"):
        im_part = 1.0
    elif im_text == "-":
        im_part = -1.0
    else:
        im_part = float(im_text)
    if m.group("re") and im_text is not None and im_text[:1] not in "+-":
        raise argparse.ArgumentTypeError(f"missing sign between parts in {text!r}")
    return complex(re_part, im_part)


# ------------------------------------------------------------ serialization


def _cnum(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    if x == 0.0:
        return "0"
    return format(x, ".17g")


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written to 17 significant digits (byte-stable output)."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, complex):
        return dumps(_cnum(obj), indent, _level)
    if isinstance(obj, Fraction):
        return dumps(float(obj), indent, _level)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _table(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    for key in ("method", "value", "error"):
        if key in report:
            lines.append(f"{key}: {_plain(report[key])}")
    rows = report.get("residual_table")
    if rows:
        width = max(len(r["check"]) for r in rows)
        lines.append(f"{'check':<{width}}  {'max_residual':>12}  {'tolerance':>9}  result")
        for r in rows:
            res = "inf" if r["max_residual"] is None else f"{r['max_residual']:.3e}"
            lines.append(f"{r['check']:<{width}}  {res:>12}  {r['tolerance']:>9.1e}  {'pass' if r['pass'] else 'FAIL'}")
    return "\n".join(lines)


def _plain(v) -> str:
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        return repr(complex(v["re"], v["im"]))
    if isinstance(v, dict):
        return ", ".join(f"{k}={_plain(x)}" for k, x in v.items())
    if isinstance(v, list):
        return "[" + ", ".join(_plain(x) for x in v) + "]"
    return str(v)


# --------------------------------------------------------------- commands


def _inputs(args: argparse.Namespace) -> dict:
    skip = {"handler", "format", "command"}
    out = {}
    for k, v in vars(args).items():
        if k in skip:
            continue
        out[k] = _cnum(v) if isinstance(v, complex) else v
    return out


def cmd_eval(args, cfg: EvalConfig) -> tuple[dict, int]:
    registry.get(args.fn)
    if args.method == "oracle":
        fn = registry.ORACLES.get(args.fn)
        if fn is None:
            raise MethodInapplicable(f"no independent oracle for {args.fn}; available: {sorted(registry.ORACLES)}")
    else:
        fn = registry.EVALUATORS[args.fn]
    return {"value": _cnum(fn(args.at, cfg)), "method": args.method}, EXIT_OK


def _pole_order(f: FunctionHandle, a: complex) -> int:
    p = f.pole_at(a)
    return 0 if p is None else f.poles.order(p)


def _pp_method(f: FunctionHandle, a: complex, method: str, cfg: EvalConfig) -> complex:
    if method == "closed":
        v = f.closed_pp(a) if f.closed_pp else None
        if v is None:
            raise MethodInapplicable(f"no closed-form principal part of {f.name} at {a}")
        return v
    if method == "contour":
        return pp_contour(f, a)
    order = _pole_order(f, a)
    if order >= 2:
        raise MethodInapplicable(f"symmetric limit needs a regular point or simple pole; {f.name} has an order-{order} pole at {a}")
    try:
        return pp_symmetric(f, a, cfg)
    except DivergenceDetected as exc:
        raise MethodInapplicable(str(exc)) from exc


def _res_method(f: FunctionHandle, a: complex, method: str, cfg: EvalConfig) -> complex:
    if method == "closed":
        v = f.closed_res(a) if f.closed_res else None
        if v is None:
            raise MethodInapplicable(f"no closed-form residue of {f.name} at {a}")
        return v
    if method == "contour":
        return residue_contour(f, a)
    order = _pole_order(f, a)
    if order >= 3:
        raise MethodInapplicable(f"symmetric difference handles poles of order <= 2; {f.name} has order {order} at {a}")
    try:
        return residue_symmetric(f, a, cfg)
    except DivergenceDetected as exc:
        raise MethodInapplicable(str(exc)) from exc


def _analyze(args, cfg: EvalConfig, single) -> tuple[dict, int]:
    f = registry.get(args.fn)
    if args.method != "all":
        return {"value": _cnum(single(f, args.at, args.method, cfg)), "method": args.method}, EXIT_OK
    values, skipped = {}, {}
    for m in ("closed", "contour", "symmetric"):
        try:
            values[m] = single(f, args.at, m, cfg)
        except MethodInapplicable as exc:
            skipped[m] = str(exc)
    if not values:
        raise MethodInapplicable("no method applies: " + "; ".join(skipped.values()))
    vs = list(values.values())
    spread = max((abs(x - y) for x in vs for y in vs), default=0.0)
    report = {
        "value": _cnum(vs[0]),
        "method": "all",
        "values": {m: _cnum(v) for m, v in values.items()},
        "max_discrepancy": spread,
    }
    if skipped:
        report["skipped"] = skipped
    return report, EXIT_OK


def cmd_pp(args, cfg):
    return _analyze(args, cfg, _pp_method)


def cmd_res(args, cfg):
    return _analyze(args, cfg, _res_method)


def cmd_verify(args, cfg) -> tuple[dict, int]:
    rows = verify.run_suite(args.suite, args.grid_seed, cfg)
    table = []
    for r in rows:
        row = {
            "check": r.check,
            "max_residual": r.max_residual if math.isfinite(r.max_residual) else None,
            "tolerance": r.tolerance,
            "pass": r.passed,
        }
        if r.value is not None:
            row["value"] = _cnum(r.value)
        if r.error:
            row["error"] = r.error
        table.append(row)
    failed = sum(not r.passed for r in rows)
    report = {
        "value": {"checks": len(rows), "failed": failed},
        "method": f"suite:{args.suite}",
        "residual_table": table,
    }
    return report, EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


def cmd_euler(args, cfg) -> tuple[dict, int]:
    eq = eulerops.parse_equation(args.equation)
    poly, roots, basis = eulerops.solve(eq, args.real_form)
    points = args.points or [0.5, 1.0, 2.0]
    residual = eulerops.verify_basis(eq, basis, points)
    value = {
        "order": eq.order,
        "coefficients": [_cnum(float(c)) for c in eq.coeffs],
        "delta_poly": [_cnum(float(c)) for c in poly.coeffs],
        "roots": [
            {"root": _cnum(e.root), "multiplicity": e.multiplicity, "raw": [_cnum(r) for r in e.raw]} for e in roots.entries
        ],
        "solution": basis.rendered,
        "residual": residual,
        "points": [float(p) for p in points],
    }
    if eq.shift is not None:
        value["variable"] = eulerops.variable_name(eq)
    return {"value": value, "method": "delta_operator"}, EXIT_OK


def cmd_casimir(args, cfg) -> tuple[dict, int]:
    model = dirichlet.get_model(args.model)
    e0, method = dirichlet.casimir_with_method(model, cfg)
    return {"value": _cnum(e0), "method": method}, EXIT_OK


def _points(text: str) -> list[float]:
    try:
        return [float(p) for p in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"points must be a comma-separated list of numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=float, default=None, help="relative series tolerance (overrides MEROFACT_PREC)")
    common.add_argument("--format", choices=("json", "table"), default="json")

    parser = argparse.ArgumentParser(prog="merofact", description="Gamma-family functions, principal parts and Euler equations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a registered function")
    p.add_argument("--fn", required=True)
    p.add_argument("--at", required=True, type=parse_complex)
    p.add_argument("--method", choices=("production", "oracle"), default="production")
    p.set_defaults(handler=cmd_eval)

    for name, handler, what in (("pp", cmd_pp, "principal part"), ("res", cmd_res, "residue")):
        p = sub.add_parser(name, parents=[common], help=f"{what} at a point")
        p.add_argument("--fn", required=True)
        p.add_argument("--at", required=True, type=parse_complex)
        p.add_argument("--method", choices=("closed", "contour", "symmetric", "all"), default="contour")
        p.set_defaults(handler=handler)

    p = sub.add_parser("verify", parents=[common], help="run the identity checks")
    p.add_argument("--suite", choices=verify.SUITES, default="all")
    p.add_argument("--grid-seed", type=int, default=verify.DEFAULT_SEED)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("euler", parents=[common], help="solve an Euler-Cauchy equation")
    p.add_argument("--equation", required=True)
    p.add_argument("--real-form", action="store_true")
    p.add_argument("--points", type=_points, default=None)
    p.set_defaults(handler=cmd_euler)

    p = sub.add_parser("casimir", parents=[common], help="Casimir energy of a spectral model")
    p.add_argument("--model", choices=sorted(dirichlet.MODELS), required=True)
    p.set_defaults(handler=cmd_casimir)
    return parser


def _glue_values(argv: Sequence[str]) -> list[str]:
    # "--at -1+2i" would otherwise be read as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--at", "--points", "--equation"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_glue_values(argv))
    report: dict = {"command": args.command, "inputs": _inputs(args)}
    try:
        cfg = from_environment(args.prec)
        body, code = args.handler(args, cfg)
        report.update(body)
    except (MerofactError, ValueError) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_ERROR
    text = _table(report) if args.format == "table" else dumps(report)
    print(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
