"""Command-line front end: eigenpairs, evaluation grids, spectra, approximation and checks.

Exit codes: 0 success, 1 a checked bound is violated, 2 invalid input,
3 solver failure.
"""
from __future__ import annotations

import argparse
import io
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from prolate import approx, verify
from prolate.eigensystem import ConvergenceError, TruncationError, build_matrix, default_truncation, solve
from prolate.gpswf import build_gpswfs, eval_extended, eval_inside, make_gpswf
from prolate.specfun import DomainError, WeightParams

SCHEMA = "gpswf/1"
EXIT_VIOLATED, EXIT_INPUT, EXIT_SOLVER = 1, 2, 3


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Serialization with a fixed float format (17 significant digits)

def fmt_float(x: float) -> str:
    return "%.16e" % x


def to_json(obj, indent: int = 0) -> str:
    """JSON text with every float written as '%.16e'; non-finite floats become null."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj)) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}{to_json(str(k))}: {to_json(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in seq):
            return "[" + ", ".join(to_json(v) for v in seq) + "]"
        return "[\n" + ",\n".join(inner + to_json(v, indent + 1) for v in seq) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\r\n")
    for row in rows:
        buf.write(",".join(fmt_float(v) if isinstance(v, float) else str(v) for v in row) + "\r\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Configuration

@dataclass
class RunConfig:
    command: str
    alpha: float = 0.0
    beta: float | None = None
    c: float = 1.0
    n: list[int] = field(default_factory=list)
    n_max: int = 0
    trunc: int | None = None
    grid: tuple[float, float, float] = (-1.0, 1.0, 0.01)
    format: str = "json"
    out: str | None = None
    func: str | None = None
    s: float = 1.0
    C1: float = 1.0
    csv_path: str | None = None
    error_csv: str | None = None
    suites: tuple[str, ...] = verify.SUITES
    alphas: tuple[float, ...] = verify.STANDARD_ALPHAS
    cs: tuple[float, ...] = verify.STANDARD_CS

    def validate(self) -> None:
        if not (self.alpha > -1 and (self.beta is None or self.beta > -1)):
            raise InputError("alpha and beta must exceed -1")
        if not (self.c > 0 and math.isfinite(self.c)):
            raise InputError("c must be positive")
        start, stop, step = self.grid
        if not (step > 0 and start < stop):
            raise InputError("grid needs step > 0 and start < stop")
        if self.trunc is not None and self.trunc < 4:
            raise InputError("trunc must be >= 4")
        if any(a <= -1 for a in self.alphas):
            raise InputError("alphas must exceed -1")

    @property
    def params(self) -> WeightParams:
        return WeightParams(self.alpha, self.beta)


def parse_grid(text: str) -> tuple[float, float, float]:
    try:
        start, stop, step = (float(v) for v in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid must be start:stop:step, got {text!r}") from exc
    return start, stop, step


def grid_points(grid: tuple[float, float, float]) -> np.ndarray:
    start, stop, step = grid
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 12)


def parse_int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()] if text else []


def parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(",") if v.strip())


def _provenance(cfg: RunConfig, trunc: int) -> dict:
    p = cfg.params
    return {"schema": SCHEMA, "command": cfg.command, "alpha": p.alpha, "beta": p.beta,
            "c": cfg.c, "trunc": trunc}


# ---------------------------------------------------------------------------
# Commands

def cmd_eigen(cfg: RunConfig) -> str:
    trunc = cfg.trunc or default_truncation(cfg.n_max, cfg.c, cfg.alpha)
    pairs = solve(build_matrix(cfg.params, cfg.c, trunc), cfg.n_max)
    out = []
    for p in pairs:
        item = {"n": p.n, "chi": p.chi, "parity": p.parity, "coeffs": p.coeffs}
        if cfg.params.symmetric():
            g = make_gpswf(p)
            item.update(mu_abs=g.mu_abs, mu_phase=g.mu_phase, log_mu_abs=g.log_mu_abs, **{"lambda": g.lam})
        out.append(item)
    doc = _provenance(cfg, trunc)
    doc["pairs"] = out
    return to_json(doc) + "\n"


def cmd_eval(cfg: RunConfig) -> str:
    if not cfg.n:
        raise InputError("no eigen-indices given (use --n)")
    if min(cfg.n) < 0:
        raise InputError("eigen-indices must be >= 0")
    x = grid_points(cfg.grid)
    n_max = max(cfg.n)
    trunc = cfg.trunc or default_truncation(n_max, cfg.c, cfg.alpha)
    pairs = solve(build_matrix(cfg.params, cfg.c, trunc), n_max)
    inside = np.abs(x) <= 1.0
    if not cfg.params.symmetric() and not inside.all():
        raise InputError("evaluation outside [-1, 1] needs alpha == beta")
    cols = []
    for n in cfg.n:
        vals = np.empty_like(x)
        vals[inside] = eval_inside(pairs[n], x[inside])
        if (~inside).any():
            vals[~inside] = eval_extended(make_gpswf(pairs[n]), x[~inside])
        cols.append(vals)
    p = cfg.params
    tag = f"alpha={fmt_float(p.alpha)};beta={fmt_float(p.beta)};c={fmt_float(cfg.c)};trunc={trunc}"
    header = ["x"] + [f"psi_{n}[{tag}]" for n in cfg.n]
    rows = ([float(xi)] + [float(col[i]) for col in cols] for i, xi in enumerate(x))
    if cfg.format == "json":
        doc = _provenance(cfg, trunc)
        doc.update(n=cfg.n, x=x, values=[list(col) for col in cols])
        return to_json(doc) + "\n"
    return to_csv(header, rows)


def cmd_spectrum(cfg: RunConfig) -> str:
    if not cfg.params.symmetric():
        raise InputError("spectrum needs alpha == beta")
    trunc = cfg.trunc or default_truncation(cfg.n_max, cfg.c, cfg.alpha)
    basis = build_gpswfs(cfg.alpha, cfg.c, cfg.n_max, trunc)
    rows = [(g.n, g.chi, g.mu_abs, g.lam, (2 * g.log_mu_abs + math.log(cfg.c / (2 * math.pi))) / math.log(10))
            for g in basis]
    if cfg.format == "json":
        doc = _provenance(cfg, trunc)
        doc["spectrum"] = [dict(zip(("n", "chi", "mu_abs", "lambda", "log10_lambda"), r)) for r in rows]
        return to_json(doc) + "\n"
    tag = f"alpha={fmt_float(cfg.alpha)};c={fmt_float(cfg.c)};trunc={trunc}"
    return to_csv(["n", "chi", "mu_abs", "lambda", f"log10_lambda[{tag}]"], rows)


def cmd_approx(cfg: RunConfig) -> str:
    if not cfg.params.symmetric():
        raise InputError("approximation needs alpha == beta")
    if cfg.n_max < 0:
        raise InputError("N must be >= 0")
    N = cfg.n_max
    basis = build_gpswfs(cfg.alpha, cfg.c, N, cfg.trunc)
    coeffs, eps, weighted = None, 0.0, None
    if cfg.func == "sinc":
        f, norm = approx.sinc_fn(cfg.c), math.sqrt(math.pi / cfg.c)
    elif cfg.func == "eta":
        f, norm = approx.eta_fn(cfg.c), approx.eta_norm(cfg.c)
    elif cfg.func == "weierstrass":
        if not cfg.s > 0:
            raise InputError("s must be positive")
        f = approx.weierstrass_fn(cfg.s)
        coeffs = approx.weierstrass_coeffs(cfg.s, basis)
        weighted = approx.weierstrass_norm(cfg.s, cfg.alpha)
        norm, eps = weighted, approx.weierstrass_eps(cfg.s, cfg.c)
    elif cfg.func == "csv":
        if not cfg.csv_path:
            raise InputError("--func csv needs --csv-path")
        f = approx.function_from_csv(cfg.csv_path)
        rule = approx.rule_for(basis)
        norm = math.sqrt(rule.integrate(f(rule.nodes) ** 2))
    else:
        raise InputError(f"unknown function {cfg.func!r}")
    report = approx.error_report(f, cfg.c, cfg.alpha, N, norm, C1=cfg.C1, eps_omega=eps,
                                 name=cfg.func, basis=basis, coeffs=coeffs,
                                 weighted_norm=weighted)
    if cfg.error_csv:
        x = np.linspace(-1.0, 1.0, approx.SUP_GRID)
        err = f(x) - approx.reconstruct(report.coeffs, basis[: N + 1], x)
        with open(cfg.error_csv, "w", newline="") as fh:
            fh.write(to_csv(["x", f"error[{cfg.func};c={fmt_float(cfg.c)};N={N}]"],
                            ((float(a), float(b)) for a, b in zip(x, err))))
    doc = _provenance(cfg, basis[0].pair.truncation)
    doc["report"] = report.to_dict()
    return to_json(doc) + "\n"


def cmd_verify(cfg: RunConfig) -> tuple[str, bool]:
    reports = verify.run_standard_matrix(cfg.alphas, cfg.cs, cfg.suites)
    passed = all(r.status != verify.VIOLATED for r in reports)
    doc = {"schema": SCHEMA, "command": "verify", "reports": [r.to_dict() for r in reports],
           "passed": passed}
    return to_json(doc) + "\n", passed


# ---------------------------------------------------------------------------
# Argument parsing

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prolate", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_c=True):
        p.add_argument("--alpha", type=float, default=0.0)
        p.add_argument("--beta", type=float, default=None)
        g = p.add_mutually_exclusive_group(required=needs_c)
        g.add_argument("--c", type=float, help="bandwidth")
        g.add_argument("--c-pi", type=float, help="bandwidth in units of pi")
        p.add_argument("--trunc", type=int, default=None)
        p.add_argument("--out", default=None, help="output file (default: stdout)")

    p = sub.add_parser("eigen", help="eigenpairs and Fourier eigenvalues")
    common(p)
    p.add_argument("--nmax", type=int, required=True)

    p = sub.add_parser("eval", help="evaluate psi_n on a grid")
    common(p)
    p.add_argument("--n", type=parse_int_list, default=[])
    p.add_argument("--grid", type=parse_grid, default=(-1.0, 1.0, 0.01))
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("spectrum", help="chi, |mu| and lambda for n = 0..nmax")
    common(p)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("approx", help="projection error of a test function")
    common(p)
    p.add_argument("--func", required=True, help="sinc, eta, weierstrass or csv")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--C1", type=float, default=1.0)
    p.add_argument("--csv-path", default=None)
    p.add_argument("--error-csv", default=None)

    p = sub.add_parser("verify", help="run the bound checks over a parameter matrix")
    p.add_argument("--suite", action="append", choices=verify.SUITES, default=None)
    p.add_argument("--alpha", "--alphas", dest="alphas", type=parse_float_list,
                   default=verify.STANDARD_ALPHAS, help="comma-separated alpha values")
    p.add_argument("--cs-pi", type=parse_float_list, default=None, help="comma-separated c values in units of pi")
    p.add_argument("--out", default=None)
    return parser


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command, out=getattr(args, "out", None))
    if args.command == "verify":
        cfg.suites = tuple(args.suite) if args.suite else verify.SUITES
        cfg.alphas = tuple(args.alphas)
        if args.cs_pi:
            cfg.cs = tuple(k * math.pi for k in args.cs_pi)
        if any(c <= 0 for c in cfg.cs):
            raise InputError("c must be positive")
        cfg.validate()
        return cfg
    cfg.alpha, cfg.beta = args.alpha, args.beta
    cfg.c = args.c if args.c is not None else args.c_pi * math.pi
    cfg.trunc = args.trunc
    cfg.format = getattr(args, "format", "json")
    if args.command in ("eigen", "spectrum"):
        cfg.n_max = args.nmax
        if cfg.n_max < 0:
            raise InputError("nmax must be >= 0")
    elif args.command == "eval":
        cfg.n, cfg.grid = args.n, args.grid
    elif args.command == "approx":
        cfg.func, cfg.n_max, cfg.s, cfg.C1 = args.func, args.N, args.s, args.C1
        cfg.csv_path, cfg.error_csv = args.csv_path, args.error_csv
    cfg.validate()
    return cfg


def run(cfg: RunConfig) -> int:
    status = 0
    if cfg.command == "verify":
        text, passed = cmd_verify(cfg)
        status = 0 if passed else EXIT_VIOLATED
    else:
        text = {"eigen": cmd_eigen, "eval": cmd_eval, "spectrum": cmd_spectrum,
                "approx": cmd_approx}[cfg.command](cfg)
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def _join_negative_values(argv: list[str]) -> list[str]:
    # "--grid -3:3:0.01" would otherwise be read as an option.
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--grid" and i + 1 < len(argv):
            out.append(f"--grid={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(list(sys.argv[1:] if argv is None else argv)))
    try:
        return run(config_from_args(args))
    except (InputError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConvergenceError, TruncationError, ArithmeticError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
