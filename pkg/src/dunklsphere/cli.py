"""Command-line front end.

Every subcommand builds a :class:`RunConfig`, calls :func:`run` and prints a
report.  JSON reports carry a schema tag and an echo of the configuration;
keys are sorted so that a fixed configuration gives identical bytes.
Timings and progress go to stderr only.

Exit codes: 0 success, 2 a check ran but came out negative (not
fundamental, failed criterion, invalid root system, residual above
tolerance), 1 configuration or numerical error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .field import QuadraticSurd, format_scalar, parse_rational
from .poly import PolySyntaxError, parse_poly, to_text

SCHEMA_TAG = "dunklsphere.report/v1"
FORMATS = ("json", "csv", "text")
COMMANDS = (
    "validate-roots",
    "dunkl-apply",
    "intertwine",
    "rule",
    "harmonics",
    "kernel-check",
    "expand",
    "cesaro",
    "check-fundamental",
    "verify-all",
)


class ConfigError(ValueError):
    pass


def _rationals(text: str | Sequence | None) -> tuple[Fraction, ...]:
    if text is None or text == "":
        return ()
    items = text.split(",") if isinstance(text, str) else list(text)
    return tuple(parse_rational(str(s).strip()) for s in items)


def _ints(text: str | Sequence | None) -> tuple[int, ...]:
    if text is None or text == "":
        return ()
    items = text.split(",") if isinstance(text, str) else list(text)
    return tuple(int(s) for s in items)


def _roots(text: str | None) -> tuple[tuple[Fraction, ...], ...]:
    """``"1,0;0,1;-1,0;0,-1"`` -> root tuples."""
    if not text:
        return ()
    return tuple(_rationals(chunk) for chunk in text.split(";") if chunk.strip())


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    d: int | None = None
    m: int | None = None
    kappa: tuple = ()
    roots: tuple = ()
    g: str | None = None
    lam: Fraction | None = None
    n_max: int | None = None
    degree: int | None = None
    delta: Fraction | None = None
    N: tuple = ()
    quad_order: int | None = None
    tol: float | None = None
    zero_threshold: float = 1e-10
    seed: int = 42
    pairs: int = 200
    poly: str | None = None
    axis: str = "all"
    exact: bool | None = None
    criteria: tuple = ()
    export: str | None = None
    format: str = "json"

    def echo(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None or v == () or f.name == "command":
                continue
            out[f.name] = _plain(v)
        return out


def _plain(v):
    """JSON-safe copy: rationals and surds as strings, numpy scalars unboxed."""
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, (Fraction, QuadraticSurd)):
        return format_scalar(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        x = float(v)
        return x if math.isfinite(x) else repr(x)
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_plain(x) for x in v]
    return str(v)


# -- helpers shared by commands ---------------------------------------------

def _spec(cfg: RunConfig, validate: bool = True):
    from .roots import build_standard, make_spec, require_valid

    if cfg.roots:
        if len(cfg.kappa) != len(cfg.roots):
            raise ConfigError("--kappa must list one value per root given in --roots")
        spec = make_spec(cfg.roots, cfg.kappa, family="custom")
        return require_valid(spec) if validate else spec
    if not cfg.family:
        raise ConfigError("a root system is required (--family with --d/--m, or --roots)")
    return build_standard(cfg.family, d=cfg.d, m=cfg.m, kappa=cfg.kappa)


def _lambda(cfg: RunConfig):
    from .fundamentality import lambda_kappa

    if cfg.lam is not None:
        if cfg.lam <= 0:
            raise ConfigError("--lambda must be positive")
        return cfg.lam
    if cfg.family or cfg.roots:
        return lambda_kappa(_spec(cfg))
    raise ConfigError("give --lambda or a root system")


def _g(cfg: RunConfig, lam):
    from .functions import parse_g

    if not cfg.g:
        raise ConfigError("--g is required")
    return parse_g(cfg.g, lam)


def _axes(cfg: RunConfig, d: int) -> list[int]:
    if cfg.axis in ("all", "", None):
        return list(range(d))
    axes = [int(a) - 1 for a in str(cfg.axis).split(",")]
    if any(not 0 <= a < d for a in axes):
        raise ConfigError(f"--axis values must be in 1..{d}")
    return axes


# -- commands ----------------------------------------------------------------

def cmd_validate_roots(cfg: RunConfig) -> tuple[int, dict]:
    from .fundamentality import DegenerateConfigurationError, lambda_kappa
    from .roots import GroupTooLargeError, generate_group, validate

    spec = _spec(cfg, validate=False)
    report = validate(spec)
    out = {"system": spec.describe(), **report.to_dict()}
    if report.ok:
        try:
            out["group_order"] = generate_group(spec).order
        except GroupTooLargeError as exc:
            out["group_order"] = str(exc)
        try:
            out["lambda_kappa"] = lambda_kappa(spec)
        except DegenerateConfigurationError as exc:
            out["lambda_kappa"] = f"undefined: {exc}"
    return (0 if report.ok else 2), out


def cmd_dunkl_apply(cfg: RunConfig) -> tuple[int, dict]:
    from .dunkl import DunklContext

    spec = _spec(cfg)
    if not cfg.poly:
        raise ConfigError("--poly is required")
    p = parse_poly(cfg.poly, spec.dim)
    ctx = DunklContext(spec)
    images = {f"D{i + 1}": to_text(ctx.apply(i, p)) for i in _axes(cfg, spec.dim)}
    return 0, {"input": to_text(p), "images": images, "laplacian": to_text(ctx.laplacian(p))}


def cmd_intertwine(cfg: RunConfig) -> tuple[int, dict]:
    from .dunkl import DunklContext
    from .intertwine import apply_V, build_table, degree_dims, intertwining_defects, matrix_rank

    spec = _spec(cfg)
    n_max = cfg.n_max if cfg.n_max is not None else (12 if spec.dim == 2 else 8)
    if cfg.poly:
        p = parse_poly(cfg.poly, spec.dim)
        n_max = max(n_max, p.degree())
    tab = build_table(DunklContext(spec), n_max)
    defects = intertwining_defects(tab)
    rows = [
        {"degree": n, "axis": i + 1, "max_defect": w}
        for n, i, w in defects
    ]
    # float-mode systems (I2(m) with irrational roots) get a rounding allowance
    ok = all(w == 0 if spec.exact else float(w) <= 1e-9 for _, _, w in defects)
    out = {
        "n_max": n_max,
        "exact": spec.exact,
        "holds": ok,
        "defects": rows,
        "dims": degree_dims(tab),
        "ranks": [matrix_rank(tab, n) for n in range(n_max + 1)],
    }
    if cfg.poly:
        out["input"] = to_text(p)
        out["V"] = to_text(apply_V(tab, p))
    return (0 if ok else 2), out


def cmd_rule(cfg: RunConfig) -> tuple[int, dict]:
    from .quadrature import build_rule, export_csv_rows

    spec = _spec(cfg)
    degree = cfg.degree if cfg.degree is not None else 8
    rule = build_rule(spec, degree)
    out = {
        "exactness_degree": rule.exactness_degree,
        "exact_construction": rule.exact_construction,
        "nodes": rule.size,
        "mass": rule.mass,
        "weight_sum": float(np.sum(rule.weights)),
    }
    rows = export_csv_rows(rule)
    if cfg.export:
        with open(cfg.export, "w", newline="", encoding="utf-8") as fh:
            csv.writer(fh, lineterminator="\r\n").writerows(rows)
        out["export"] = cfg.export
    out["_table"] = rows
    return 0, out


def cmd_harmonics(cfg: RunConfig) -> tuple[int, dict]:
    from .dunkl import DunklContext
    from .harmonics import change_condition, harmonic_dimension, orthonormal_basis
    from .quadrature import UnsupportedRootSystemError, build_rule

    spec = _spec(cfg)
    n = cfg.degree if cfg.degree is not None else 2
    ctx = DunklContext(spec)
    out: dict[str, Any] = {"degree": n, "expected_dimension": harmonic_dimension(n, spec.dim)}
    try:
        basis = orthonormal_basis(ctx, build_rule(spec, 2 * n), n)
    except UnsupportedRootSystemError as exc:
        from .harmonics import harmonic_kernel

        polys = harmonic_kernel(ctx, n)
        out.update(dimension=len(polys), kernel_basis=[to_text(p) for p in polys], orthonormalized=False, note=str(exc))
        return 0, out
    out.update(
        dimension=basis.size,
        kernel_basis=[to_text(p) for p in basis.polys],
        orthonormal_basis=[to_text(p.chop(1e-14)) for p in basis.orthonormal],
        gram_residual=basis.gram_residual,
        change_condition=change_condition(basis),
        orthonormalized=True,
    )
    return 0, out


def cmd_kernel_check(cfg: RunConfig) -> tuple[int, dict]:
    from .acceptance import kernel_residuals
    from .fundamentality import lambda_kappa

    spec = _spec(cfg)
    n_max = cfg.n_max if cfg.n_max is not None else 6
    tol = cfg.tol if cfg.tol is not None else 1e-9
    res = kernel_residuals(spec, n_max, cfg.pairs, cfg.seed)
    ok = max(res) <= tol
    rows = [{"degree": n, "residual": r, "ok": r <= tol} for n, r in enumerate(res)]
    out = {"lambda": lambda_kappa(spec), "tolerance": tol, "pairs": cfg.pairs, "residuals": rows, "max_residual": max(res), "passed": ok}
    out["_table"] = [["degree", "residual", "ok"]] + [[r["degree"], repr(r["residual"]), r["ok"]] for r in rows]
    return (0 if ok else 2), out


def cmd_expand(cfg: RunConfig) -> tuple[int, dict]:
    from .gegenbauer import expand

    lam = _lambda(cfg)
    g = _g(cfg, lam)
    n_max = cfg.n_max if cfg.n_max is not None else 10
    series = expand(g, lam, n_max, cfg.quad_order, exact=cfg.exact)
    exact = series.meta.get("exact_coeffs")
    rows = []
    for n, b in enumerate(series.coeffs):
        row = {"n": n, "b": float(b)}
        if exact is not None:
            row["b_exact"] = exact[n]
        rows.append(row)
    meta = {k: v for k, v in series.meta.items() if k != "exact_coeffs"}
    out = {"lambda": lam, "g": g.name, "coefficients": rows, "c_lambda": series.c_lambda, "quadrature": meta}
    header = ["n", "b"] + (["b_exact"] if exact is not None else [])
    out["_table"] = [header] + [
        [r["n"], repr(r["b"])] + ([format_scalar(r["b_exact"])] if exact is not None else []) for r in rows
    ]
    return 0, out


def cmd_cesaro(cfg: RunConfig) -> tuple[int, dict]:
    from .gegenbauer import CesaroParams, expand, uniform_error

    lam = _lambda(cfg)
    g = _g(cfg, lam)
    delta = cfg.delta if cfg.delta is not None else Fraction(lam) + 1
    if delta <= 0:
        raise ConfigError("--delta must be positive")
    Ns = cfg.N or (16, 64, 256)
    series = expand(g, lam, max(Ns), cfg.quad_order, exact=cfg.exact)
    rows = [{"N": N, "sup_error": uniform_error(g, series, CesaroParams(delta=float(delta), N=N))} for N in Ns]
    out = {"lambda": lam, "delta": delta, "g": g.name, "errors": rows, "above_convergence_threshold": float(delta) > float(lam)}
    out["_table"] = [["N", "sup_error"]] + [[r["N"], repr(r["sup_error"])] for r in rows]
    return 0, out


def cmd_check_fundamental(cfg: RunConfig) -> tuple[int, dict]:
    from .fundamentality import check_fundamentality

    lam = _lambda(cfg)
    g = _g(cfg, lam)
    n_max = cfg.n_max if cfg.n_max is not None else 32
    rep = check_fundamentality(g, lam, n_max=n_max, zero_threshold=cfg.zero_threshold, quad_order=cfg.quad_order, exact=cfg.exact)
    out = rep.to_dict()
    out["lambda"] = lam
    out["g"] = g.name
    out["_table"] = [["n", "b", "verdict"]] + [
        [c["n"], repr(c["b"]), c["verdict"]] for c in out["coefficients"]
    ]
    return (0 if rep.fundamental else 2), out


def cmd_verify_all(cfg: RunConfig) -> tuple[int, dict]:
    from .acceptance import CRITERIA, run_criterion

    keys = [str(k) for k in cfg.criteria] or list(CRITERIA)
    unknown = [k for k in keys if k not in CRITERIA]
    if unknown:
        raise ConfigError(f"unknown criteria {unknown}; choose from {list(CRITERIA)}")
    results = []
    for k in keys:
        r = run_criterion(k, cfg.seed)
        print(f"{r.line()} ({r.seconds:.2f} s)", file=sys.stderr)
        results.append(r)
    out = {
        "criteria": [r.to_dict() for r in results],
        "passed": [r.key for r in results if r.passed],
        "failed": [r.key for r in results if not r.passed],
    }
    out["_table"] = [["criterion", "passed", "title"]] + [[r.key, r.passed, r.title] for r in results]
    return (0 if not out["failed"] else 2), out


HANDLERS = {
    "validate-roots": cmd_validate_roots,
    "dunkl-apply": cmd_dunkl_apply,
    "intertwine": cmd_intertwine,
    "rule": cmd_rule,
    "harmonics": cmd_harmonics,
    "kernel-check": cmd_kernel_check,
    "expand": cmd_expand,
    "cesaro": cmd_cesaro,
    "check-fundamental": cmd_check_fundamental,
    "verify-all": cmd_verify_all,
}


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Dispatch ``cfg.command``; returns the exit code and the report (with table, if any)."""
    if cfg.command not in HANDLERS:
        raise ConfigError(f"unknown command {cfg.command!r}")
    if cfg.format not in FORMATS:
        raise ConfigError(f"--format must be one of {FORMATS}")
    code, result = HANDLERS[cfg.command](cfg)
    table = result.pop("_table", None)
    report = {
        "schema": SCHEMA_TAG,
        "command": cfg.command,
        "config": cfg.echo(),
        "exit_code": code,
        "result": _plain(result),
    }
    if table is not None:
        report["_table"] = table
    return code, report


# -- rendering ----------------------------------------------------------------

def render(report: dict, fmt: str) -> str:
    table = report.pop("_table", None)
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"
    if fmt == "csv":
        if table is None:
            raise ConfigError(f"{report['command']} has no tabular output; use --format json or text")
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\r\n").writerows(table)
        return buf.getvalue()
    lines = [f"{report['command']}  (exit {report['exit_code']})"]
    _text_lines(report["result"], "", lines)
    return "\n".join(lines) + "\n"


def _text_lines(obj, prefix: str, out: list[str]):
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (str, int, float, bool)) for x in v):
                out.append(f"{prefix}{k}:")
                _text_lines(v, prefix + "  ", out)
            else:
                out.append(f"{prefix}{k}: {_scalar_text(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                out.append(prefix + "- " + ", ".join(f"{k}={_scalar_text(item[k])}" for k in sorted(item)))
            else:
                out.append(f"{prefix}- {_scalar_text(item)}")


def _scalar_text(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar_text(x) for x in v) + "]"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


# -- argument parsing -----------------------------------------------------------

def _add_system(p: argparse.ArgumentParser):
    p.add_argument("--family", help="z2 or i2")
    p.add_argument("--d", type=int, help="dimension for Z2^d")
    p.add_argument("--m", type=int, help="order parameter for I2(m)")
    p.add_argument("--kappa", help="comma-separated rationals, e.g. 1/2,1/2")
    p.add_argument("--roots", help="custom full root list, e.g. '1,0;-1,0;0,1;0,-1' (kappa aligned)")


def _add_g(p: argparse.ArgumentParser):
    p.add_argument("--g", help="exp | abs | zero | poly:c0,c1,... | gegenbauer:k | runge:a")
    p.add_argument("--lambda", dest="lam", help="Gegenbauer index (default: lambda_kappa of the system)")
    p.add_argument("--quad-order", dest="quad_order", type=int)
    p.add_argument("--exact", dest="exact", action="store_true", default=None, help="force the exact route")
    p.add_argument("--no-exact", dest="exact", action="store_false", help="force quadrature")


class _Parser(argparse.ArgumentParser):
    """Usage errors become exit code 1 (2 is reserved for negative checks)."""

    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON file whose keys mirror the flags (flags win)")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--output", "-o", help="write the report to a file instead of stdout")

    parser = _Parser(prog="dunklsphere", description="Dunkl harmonic analysis on the sphere")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-roots", parents=[common], help="check root system axioms and kappa invariance")
    _add_system(p)

    p = sub.add_parser("dunkl-apply", parents=[common], help="apply Dunkl operators to a polynomial")
    _add_system(p)
    p.add_argument("--poly", help="polynomial text, e.g. 2*x1^2*x2 - 1/3*x3")
    p.add_argument("--axis", default="all", help="1-based axes, comma-separated, or 'all'")

    p = sub.add_parser("intertwine", parents=[common], help="build V_kappa and check D_i V = V d_i")
    _add_system(p)
    p.add_argument("--nmax", dest="n_max", type=int)
    p.add_argument("--poly", help="also print V_kappa applied to this polynomial")

    p = sub.add_parser("rule", parents=[common], help="weighted sphere quadrature rule")
    _add_system(p)
    p.add_argument("--degree", type=int)
    p.add_argument("--export", help="write nodes and weights as CSV")

    p = sub.add_parser("harmonics", parents=[common], help="kappa-harmonic basis of one degree")
    _add_system(p)
    p.add_argument("--degree", type=int)

    p = sub.add_parser("kernel-check", parents=[common], help="reproducing-kernel identity residuals")
    _add_system(p)
    p.add_argument("--nmax", dest="n_max", type=int)
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--tol", type=float)

    p = sub.add_parser("expand", parents=[common], help="Gegenbauer coefficients b_n of g")
    _add_system(p)
    _add_g(p)
    p.add_argument("--nmax", dest="n_max", type=int)

    p = sub.add_parser("cesaro", parents=[common], help="uniform error of Cesaro means")
    _add_system(p)
    _add_g(p)
    p.add_argument("--delta", help="Cesaro order (default lambda + 1)")
    p.add_argument("--N", dest="N", help="comma-separated orders, default 16,64,256")

    p = sub.add_parser("check-fundamental", parents=[common], help="fundamentality test up to n_max")
    _add_system(p)
    _add_g(p)
    p.add_argument("--nmax", dest="n_max", type=int)
    p.add_argument("--zero-threshold", dest="zero_threshold", type=float, default=1e-10)

    p = sub.add_parser("verify-all", parents=[common], help="run the acceptance criteria")
    p.add_argument("--criteria", help="comma-separated keys (default: all)")

    return parser


_CONVERT = {
    "kappa": _rationals,
    "roots": _roots,
    "lam": lambda v: None if v is None else parse_rational(str(v)),
    "delta": lambda v: None if v is None else parse_rational(str(v)),
    "N": _ints,
    "criteria": lambda v: () if v is None else tuple(str(s).strip() for s in (v.split(",") if isinstance(v, str) else v)),
}


def _config_from_file(path: str) -> dict:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    out = {}
    for k, v in data.items():
        key = {"lambda": "lam", "nmax": "n_max", "quad-order": "quad_order", "zero-threshold": "zero_threshold"}.get(k, k.replace("-", "_"))
        if isinstance(v, list) and key in ("kappa", "N", "criteria"):
            v = ",".join(str(x) for x in v)
        out[key] = v
    return out


def parse_config(argv: Sequence[str] | None = None) -> tuple[RunConfig, dict]:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        file_cfg = _config_from_file(args.config)
        subparser = next(a for a in parser._subparsers._group_actions if isinstance(a, argparse._SubParsersAction)).choices[args.command]
        known = {a.dest for a in subparser._actions}
        bad = sorted(set(file_cfg) - known - {"command"})
        if bad:
            raise ConfigError(f"unknown config keys for {args.command}: {bad}")
        subparser.set_defaults(**{k: v for k, v in file_cfg.items() if k != "command"})
        args = parser.parse_args(argv)
    ns = vars(args)
    extras = {k: ns.pop(k) for k in ("config", "output") if k in ns}
    names = {f.name for f in fields(RunConfig)}
    kwargs = {}
    for k, v in ns.items():
        if k not in names:
            continue
        kwargs[k] = _CONVERT[k](v) if k in _CONVERT else v
    return RunConfig(**{k: v for k, v in kwargs.items() if v is not None or k in ("lam", "delta", "exact")}), extras


def main(argv: Sequence[str] | None = None) -> int:
    t0 = time.perf_counter()
    try:
        cfg, extras = parse_config(argv)
        code, report = run(cfg)
        text = render(report, cfg.format)
    except (ValueError, ArithmeticError, RuntimeError, OSError, PolySyntaxError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if extras.get("output"):
        Path(extras["output"]).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(f"[{cfg.command}] {time.perf_counter() - t0:.2f} s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
