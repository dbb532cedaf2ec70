"""Command line front end.

    freud-uvarov <recurrence|moments|zeros|tables|suite|ode-check|electro|motion|figure1> [flags]

Every command builds a :class:`Report` and writes it as CSV (the ``rows``,
one header line, LF endings) or as JSON with the top-level keys
``command, params, results, residuals, pass``.  Exit status is 0 on
success, 1 for bad arguments and 2 when a residual exceeds its tolerance.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import mpmath as mp
import numpy as np

from .christoffel import zeros_F2
from .electrostatics import build_u, equilibrium_residual
from .ladder import build_ode, ladder_identity_residual, ode_residual, table_discrepancies
from .polys import Family
from .recurrence import compute_recurrence, string_residual
from .reproduce import DEFAULT_TOLERANCES, reproduce_table, run_suite
from .reference_tables import TABLES
from .uvarov import UvarovParams, eval_Q
from .weight import PrecisionConfig, compute_moments
from .zeros import integrate_motion, uvarov_monotonic_report, zeros_F, zeros_Q

__all__ = ["Report", "build_parser", "main"]

EXIT_OK, EXIT_ARGS, EXIT_TOL = 0, 1, 2

U_ROWS_NOTE = ("rows labelled 'u roots' are the roots of the quartic u(x, t; 2m); "
               "the same polynomials are also called ghost polynomials")
TABLE6_NOTE = ("table 6, M = 0: u has a double root at 0 and a real pair, so the "
               "'two real and two complex roots' description does not hold in this column")
SLIP_NOTE = ("general-degree table, x^4 coefficient of A: the factor (1 - 3 b_{n-1}) t "
             "only matches the symbolic build when read as (1 - 3 b_n) t")


class ArgumentError(ValueError):
    """Raised for flag combinations argparse cannot reject by itself."""


@dataclass
class Report:
    command: str
    params: dict
    rows: list = field(default_factory=list)
    residuals: dict = field(default_factory=dict)
    passed: bool = True
    notes: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        results = {"rows": self.rows, "notes": self.notes}
        results.update(self.extra)
        return {"command": self.command, "params": self.params, "results": results,
                "residuals": self.residuals, "pass": bool(self.passed)}


def _clean(value):
    """JSON-safe scalars: numpy and mpmath numbers to float, non-finite to strings."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.floating, float, mp.mpf)):
        value = float(value)
        return value if math.isfinite(value) else str(value)
    return value


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_clean(report.as_dict()), indent=2) + "\n"
    buf = io.StringIO()
    if report.rows:
        writer = csv.DictWriter(buf, fieldnames=list(report.rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in report.rows:
            writer.writerow({k: _fmt_csv(v) for k, v in row.items()})
    return buf.getvalue()


def _fmt_csv(value):
    if isinstance(value, (float, np.floating, mp.mpf)):
        return repr(float(value))
    return value


# ---------------------------------------------------------------- commands


def _cfg(args) -> PrecisionConfig:
    return PrecisionConfig(working_digits=args.digits)


def _tolerances(args) -> dict:
    tol = dict(DEFAULT_TOLERANCES)
    for key in DEFAULT_TOLERANCES:
        value = getattr(args, f"tol_{key}", None)
        if value is not None:
            tol[key] = value
    return tol


def cmd_recurrence(args) -> Report:
    n_max = args.n_max or 20
    tab = compute_recurrence(args.t, n_max, _cfg(args))
    tol = _tolerances(args)["string"]
    rows = []
    for n in range(1, n_max):
        rows.append({"n": n, "a_sq": float(tab.a_sq[n]), "norm_sq": float(tab.norm_sq[n]),
                     "string_residual": float(string_residual(tab, n))})
    worst = max(r["string_residual"] for r in rows)
    return Report("recurrence", {"t": args.t, "n_max": n_max, "digits": args.digits}, rows,
                  {"string": worst}, worst <= tol)


def cmd_moments(args) -> Report:
    K = args.n or 10
    table = compute_moments(args.t, K, _cfg(args))
    rows = [{"k": 2 * j, "mu": float(table.mu[j])} for j in range(K + 1)]
    worst = max(float(table.recursion_residual(j)) for j in range(K - 1))
    return Report("moments", {"t": args.t, "K": K, "digits": args.digits}, rows,
                  {"recursion": worst}, True,
                  ["mu_0 and mu_2 come from quadrature, the rest from the moment recursion; "
                   "mu_4 is cross-checked against quadrature"])


def cmd_zeros(args) -> Report:
    n = args.n or 4
    family = Family(args.family)
    tab = compute_recurrence(args.t, max(args.n_max or 0, n + 3), _cfg(args))
    params = {"family": family.value, "t": args.t, "n": n}
    if family is Family.FREUD:
        values = zeros_F(n, tab).values
    elif family is Family.CHRISTOFFEL2:
        values = tuple(float(v) for v in zeros_F2(n, tab))
    else:
        if args.M_grid:
            return _zeros_grid(args, n, tab)
        params["M"] = args.M
        values = zeros_Q(n, UvarovParams(args.t, args.M), tab).values
    rows = [{"k": k + 1, "zero": v} for k, v in enumerate(values)]
    return Report("zeros", params, rows)


def _zeros_grid(args, n: int, tab) -> Report:
    if n % 2:
        raise ArgumentError("--M-grid needs an even --n (odd degrees do not move with M)")
    grid = sorted(set(args.M_grid))
    report = uvarov_monotonic_report(n // 2, args.t, grid, tab)
    rows = [{"M": M, **{f"y_{k + 1}": v for k, v in enumerate(ys)}}
            for M, ys in zip(report.masses, report.zeros)]
    chains = sum(c is False for c in report.chains_ok)
    out = Report("zeros", {"family": "uvarov", "t": args.t, "n": n, "M_grid": grid}, rows,
                 {"monotonicity_violations": len(report.violations),
                  "interlacing_failures": chains},
                 report.monotone_ok and chains == 0)
    if report.rates:
        out.extra["rates"] = [{"index": r.index, "side": r.side, "g": r.g,
                               "observed": r.observed[-1], "predicted_split": r.predicted,
                               "predicted_full": r.predicted_full} for r in report.rates]
    return out


def cmd_tables(args) -> Report:
    which = args.which
    tol = args.tol_tables if args.tol_tables is not None else DEFAULT_TOLERANCES["tables"]
    entries = reproduce_table(which, _cfg(args), tol)
    rows = []
    for e in entries:
        label = e.quantity.replace("u imag", "u roots (imaginary pair)").replace(
            "u real", "u roots (real pair)")
        rows.append({"table": e.table, "quantity": label, "M": e.M, "computed": e.computed,
                     "reference": e.reference, "diff": e.diff, "ok": e.ok, "note": e.note})
    worst = max(e.diff for e in entries)
    notes = [U_ROWS_NOTE]
    if which == 6:
        notes.append(TABLE6_NOTE)
    ref = TABLES[which]
    return Report("tables", {"table": which, "t": ref.t, "n": ref.n, "tol": tol}, rows,
                  {"max_diff": worst}, all(e.ok for e in entries), notes)


def cmd_suite(args) -> Report:
    cfg = _cfg(args)
    n_max = args.n_max or 20
    table = None
    notes = []
    if args.corrupt is not None:
        k = args.corrupt
        if not 1 <= k < n_max:
            raise ArgumentError(f"--corrupt index must lie in 1..{n_max - 1}")
        tab = compute_recurrence(args.t, n_max, cfg)
        a_sq = list(tab.a_sq)
        a_sq[k] = a_sq[k] * (1 + mp.mpf("1e-6"))
        table = tab.with_a_sq(a_sq)
        notes.append(f"a_{k}^2 multiplied by 1 + 1e-6 before running the suites")
    results = run_suite(args.t, args.M, cfg, n_max, _tolerances(args), table)
    rows = [r.as_dict() for r in results]
    return Report("suite", {"t": args.t, "M": args.M, "n_max": n_max, "digits": args.digits,
                            "corrupt": args.corrupt}, rows,
                  {r.suite: r.max_residual for r in results}, all(r.passed for r in results),
                  notes)


def cmd_ode_check(args) -> Report:
    n = args.n or 4
    if n < 2:
        raise ArgumentError("--n must be at least 2")
    tab = compute_recurrence(args.t, max(args.n_max or 0, n + 3), _cfg(args))
    params = UvarovParams(args.t, args.M)
    tol = _tolerances(args)
    ode = build_ode(n, params, tab)
    rows = []
    for name, poly in (("A", ode.A), ("B", ode.B), ("C", ode.C)):
        # residue of exact cancellations sits near the working precision
        for power, coeff in sorted(poly.cancel(1e-40).terms().items()):
            rows.append({"poly": name, "power": power, "coeff": float(coeff)})
    xs = np.linspace(-2.0, 2.0, 50)
    res = float(np.max(ode_residual(n, xs, params, tab, ode)))
    rng = np.random.default_rng(args.seed)
    xr = rng.uniform(0.05, 2.0, 20) * rng.choice([-1.0, 1.0], 20)
    lo, ra = ladder_identity_residual(n, xr, params, tab)
    gaps = table_discrepancies(n, params, tab)
    residuals = {"ode": res, "ladder_lowering": float(np.max(lo)),
                 "ladder_raising": float(np.max(ra))}
    ok = res <= tol["ode"] and max(residuals["ladder_lowering"],
                                    residuals["ladder_raising"]) <= tol["ladder"]
    notes = [f"Wronskian sign {ode.meta.get('wronskian_sign', '+1')} "
             f"(validation gap {ode.meta.get('validation_gap', 0.0):.2e})"]
    if n % 2 == 0:
        residuals["table_even"] = max(v for k, v in gaps.items() if k[0] == "even")
        ok = ok and residuals["table_even"] <= tol["ode_table"]
    residuals["table_general"] = max(v for k, v in gaps.items() if k[0] == "general")
    if gaps[("general", "A", 4)] > tol["ode_table"]:
        notes.append(SLIP_NOTE)
    return Report("ode-check", {"n": n, "t": args.t, "M": args.M}, rows, residuals, ok, notes)


def cmd_electro(args) -> Report:
    m = args.m or 2
    tab = compute_recurrence(args.t, max(args.n_max or 0, 2 * m + 3), _cfg(args))
    params = UvarovParams(args.t, args.M)
    u = build_u(m, params, tab)
    report = equilibrium_residual(m, params, tab)
    rows = [{"i": i + 1, "zero": y, "u": u(y), "residual": r}
            for i, (y, r) in enumerate(zip(report.zeros, report.residuals))]
    worst = report.max_abs
    out = Report("electro", {"m": m, "t": args.t, "M": args.M}, rows, {"equilibrium": worst},
                 worst <= _tolerances(args)["electrostatic"], [f"u root pattern: {u.root_pattern}"])
    out.extra["u"] = {"c4": u.c4, "c2": u.c2, "c0": u.c0,
                      "s_roots": [str(s) for s in u.s_roots]}
    return out


def cmd_motion(args) -> Report:
    n = args.n or 4
    family = Family(args.family)
    params = UvarovParams(args.t1, args.M)
    cfg = _cfg(args)
    traj = integrate_motion(n, family, params, args.t0, args.t1, args.steps, cfg)
    rows = [{"t": row[0], **{f"y_{k + 1}": v for k, v in enumerate(row[1:])}}
            for row in traj.to_rows()]
    tab = compute_recurrence(args.t1, n + 2, cfg)
    if family is Family.FREUD:
        direct = zeros_F(n, tab).array
        key = "motion"
    else:
        direct = zeros_Q(n, params, tab).array
        key = "motion_q"
    err = float(np.max(np.abs(traj.zeros[-1].array - direct)))
    return Report("motion", {"family": family.value, "n": n, "M": args.M, "t0": args.t0,
                             "t1": args.t1, "steps": args.steps}, rows,
                  {"endpoint": err}, err <= _tolerances(args)[key])


FIGURE_MASSES = (0.0, 0.2, 0.6)


def cmd_figure1(args) -> Report:
    tab = compute_recurrence(args.t, 8, _cfg(args))
    x = np.linspace(-2.0, 2.0, 400)
    odd = UvarovParams(args.t, args.M)
    cols = {"x": x, "Q3": eval_Q(3, x, odd, tab), "Q5": eval_Q(5, x, odd, tab)}
    for M, name in zip(FIGURE_MASSES, ("Q4_M0", "Q4_M02", "Q4_M06")):
        cols[name] = eval_Q(4, x, UvarovParams(args.t, M), tab)
    rows = [{k: float(v[i]) for k, v in cols.items()} for i in range(len(x))]
    return Report("figure1", {"t": args.t, "M_odd": args.M, "points": len(x)}, rows)


COMMANDS = {
    "recurrence": cmd_recurrence,
    "moments": cmd_moments,
    "zeros": cmd_zeros,
    "tables": cmd_tables,
    "suite": cmd_suite,
    "ode-check": cmd_ode_check,
    "electro": cmd_electro,
    "motion": cmd_motion,
    "figure1": cmd_figure1,
}


# ------------------------------------------------------------------ parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGS, f"{self.prog}: error: {message}\n")


def _nonneg(text: str) -> float:
    value = float(text)
    if not math.isfinite(value) or value < 0:
        raise argparse.ArgumentTypeError(f"expected a finite non-negative number, got {text!r}")
    return value


def _positive(text: str) -> float:
    value = _nonneg(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive number")
    return value


def _count(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _grid(text: str) -> list:
    try:
        return [_nonneg(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common(p: argparse.ArgumentParser, t_default: float = 1.0) -> None:
    p.add_argument("--t", type=_nonneg, default=t_default,
                   help=f"potential parameter t >= 0 (default {t_default})")
    p.add_argument("--M", type=_nonneg, default=0.5, help="mass at the origin (default 0.5)")
    p.add_argument("--digits", type=int, default=80,
                   help="working decimal digits for the recurrence (default 80)")
    p.add_argument("--n-max", type=_count, default=None,
                   help="largest degree of the recurrence table (default depends on the command)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")
    for key, value in DEFAULT_TOLERANCES.items():
        p.add_argument(f"--tol-{key.replace('_', '-')}", dest=f"tol_{key}", type=_nonneg,
                       default=None, help=f"tolerance for the {key} check (default {value:g})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="freud-uvarov", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("recurrence", help="a_n^2, ||F_n||^2 and string-equation residuals")
    _common(p)

    p = sub.add_parser("moments", help="even moments of the weight")
    _common(p)
    p.add_argument("--n", type=_count, default=None, help="highest even moment index K (default 10)")

    p = sub.add_parser("zeros", help="zeros of F_n, Q_n or F^[2]_n")
    _common(p)
    p.add_argument("--n", type=_count, default=None, help="degree (default 4)")
    p.add_argument("--family", choices=[f.value for f in Family], default="freud")
    p.add_argument("--M-grid", type=_grid, default=None,
                   help="comma separated masses; with --family uvarov reports monotonicity")

    p = sub.add_parser("tables", help="recompute one of the reference tables 3..8")
    _common(p)
    p.add_argument("which", type=int, choices=sorted(TABLES))

    p = sub.add_parser("suite", help="run every residual suite")
    _common(p)
    p.add_argument("--corrupt", type=int, default=None, metavar="K",
                   help="perturb a_K^2 by a relative 1e-6 first (the suites must then fail)")

    p = sub.add_parser("ode-check", help="holonomic equation and ladder residuals for Q_n")
    _common(p)
    p.add_argument("--n", type=_count, default=None, help="degree (default 4)")
    p.add_argument("--seed", type=int, default=0, help="seed for the ladder sample points")

    p = sub.add_parser("electro", help="electrostatic equilibrium of the zeros of Q_2m")
    _common(p)
    p.add_argument("--m", type=_count, default=None, help="half degree m (default 2)")

    p = sub.add_parser("motion", help="RK4 integration of the zeros in t")
    _common(p)
    p.add_argument("--n", type=_count, default=None, help="degree (default 4)")
    p.add_argument("--family", choices=("freud", "uvarov"), default="freud")
    p.add_argument("--t0", type=_positive, default=0.5)
    p.add_argument("--t1", type=_positive, default=1.0)
    p.add_argument("--steps", type=_count, default=50)

    p = sub.add_parser("figure1", help="sampled Q_3, Q_5 and Q_4 for M in {0, 0.2, 0.6}")
    _common(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not 30 <= args.digits <= 1000:
        parser.error("--digits must lie in 30..1000")
    try:
        report = COMMANDS[args.command](args)
    except (ArgumentError, ValueError, IndexError, KeyError) as exc:
        print(f"freud-uvarov: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except ArithmeticError as exc:
        print(f"freud-uvarov: numerical failure: {exc}", file=sys.stderr)
        return EXIT_TOL
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.format == "csv":
        for note in report.notes:
            print(f"note: {note}", file=sys.stderr)
        if not report.passed:
            bad = ", ".join(f"{k}={_clean(v)}" for k, v in report.residuals.items())
            print(f"freud-uvarov: tolerance failure ({bad})", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_TOL


if __name__ == "__main__":
    sys.exit(main())
