"""Recompute the reference tables and run the residual suites.

Both are plain functions returning plain data so that the command line,
the tests and interactive sessions share one implementation.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .christoffel import interlace_T1
from .electrostatics import build_u, equilibrium_residual
from .ladder import build_ode, ladder_identity_residual, ode_residual, table_discrepancies
from .polys import structure_relation_residual
from .recurrence import RecurrenceTable, compute_recurrence, string_residual, toda_residual
from .reference_tables import TABLES
from .uvarov import UvarovParams, perturbed_string_residual
from .weight import PrecisionConfig
from .zeros import (dF_dt_residual, integrate_motion, motion_rhs_Q, uvarov_monotonic_report,
                    zeros_F, zeros_Q)

__all__ = [
    "DEFAULT_TOLERANCES",
    "SuiteResult",
    "TableEntry",
    "reproduce_table",
    "run_suite",
]

TABLE_TOL = 1e-3


@dataclass(frozen=True)
class TableEntry:
    table: int
    quantity: str       # "Q zero k" or "u imag" / "u real"
    M: float
    computed: float
    reference: float
    tol: float = TABLE_TOL
    note: str = ""

    @property
    def diff(self) -> float:
        return abs(self.computed - self.reference)

    @property
    def ok(self) -> bool:
        return self.diff <= self.tol


def reproduce_table(number: int, cfg: PrecisionConfig | None = None,
                    tol: float = TABLE_TOL) -> list[TableEntry]:
    """Every entry of table ``number`` (3..8), recomputed.

    ``u`` rows carry the root pattern of ``u`` as a note whenever it is not
    one real pair plus one imaginary pair; they are still compared
    numerically.
    """
    if number not in TABLES:
        raise KeyError(f"no reference table {number}; choose from {sorted(TABLES)}")
    ref = TABLES[number]
    cfg = cfg or PrecisionConfig()
    tab = compute_recurrence(ref.t, max(12, ref.n + 2), cfg)
    out = []
    for j, M in enumerate(ref.masses):
        params = UvarovParams(ref.t, M)
        positive = zeros_Q(ref.n, params, tab).array[ref.m:][::-1]
        for k, row in enumerate(ref.q_rows):
            out.append(TableEntry(number, f"Q zero {k + 1}", M, float(positive[k]), row[j], tol))
        u = build_u(ref.m, params, tab)
        imag, real = u.table_values()
        note = "" if u.two_real_two_imaginary else u.root_pattern
        out.append(TableEntry(number, "u imag", M, imag, ref.u_imag[j], tol, note))
        out.append(TableEntry(number, "u real", M, real, ref.u_real[j], tol, note))
    return out


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    max_residual: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.max_residual <= self.tolerance)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = self.passed
        if not math.isfinite(d["max_residual"]):
            d["max_residual"] = str(d["max_residual"])
        return d


DEFAULT_TOLERANCES = {
    "string": 1e-10,
    "toda": 1e-5,
    "structure": 1e-9,
    "perturbed_string": 1e-8,
    "ladder": 1e-8,
    "ode": 1e-7,
    "ode_table": 1e-8,
    "electrostatic": 1e-6,
    "motion": 1e-5,
    "motion_q": 1e-4,
    "dF_dt": 1e-5,
    "interlacing": 0.0,
    "monotonicity": 0.0,
    "tables": TABLE_TOL,
}


def run_suite(t: float = 1.0, M: float = 0.5, cfg: PrecisionConfig | None = None,
              n_max: int = 20, tolerances: dict | None = None,
              table: RecurrenceTable | None = None) -> list[SuiteResult]:
    """Every residual suite at one ``(t, M)``.

    ``table`` replaces the freshly computed recurrence data (used to check
    that a corrupted table is detected).
    """
    cfg = cfg or PrecisionConfig()
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(tolerances or {})
    tab = table if table is not None else compute_recurrence(t, n_max, cfg)
    params = UvarovParams(tab.t, M)
    rng = np.random.default_rng(20240601)
    xs = rng.uniform(0.1, 2.0, 20) * rng.choice([-1.0, 1.0], 20)
    results = []

    def add(name, value, detail=""):
        results.append(SuiteResult(name, float(value), tol[name], detail))

    add("string", max(string_residual(tab, n) for n in range(1, tab.n_max)),
        f"n = 1..{tab.n_max - 1}")
    add("toda", max(toda_residual(tab.t, 1e-3, k, cfg) for k in range(1, 6))
        if tab.t >= 1e-3 else 0.0, "k = 1..5, h = 1e-3")
    add("structure", max(float(np.max(structure_relation_residual(n, xs, tab)))
                         for n in range(1, min(12, tab.n_max))), "n = 1..11")
    top = min(10, tab.n_max - 3)
    add("perturbed_string", max(perturbed_string_residual(n, params, tab)
                                for n in range(2, top + 1)), f"n = 2..{top}")
    ladder = 0.0
    ode = 0.0
    table_gap = 0.0
    for n in range(2, min(10, tab.n_max - 1)):
        lo, ra = ladder_identity_residual(n, xs, params, tab)
        ladder = max(ladder, float(np.max(lo)), float(np.max(ra)))
        coeffs = build_ode(n, params, tab)
        ode = max(ode, float(np.max(ode_residual(n, xs, params, tab, coeffs))))
        if n % 2 == 0:
            gaps = table_discrepancies(n, params, tab)
            table_gap = max(table_gap, max(v for k, v in gaps.items() if k[0] == "even"))
    add("ladder", ladder, "n = 2..9")
    add("ode", ode, "n = 2..9")
    add("ode_table", table_gap, "even n against the even-degree table")
    electro = max(equilibrium_residual(m, params, tab).max_abs for m in (2, 3))
    add("electrostatic", electro, "m = 2, 3")
    traj = integrate_motion(4, "freud", params, max(0.5, tab.t - 0.5), tab.t, 50, cfg)
    add("motion", float(np.max(np.abs(traj.zeros[-1].array - zeros_F(4, tab).array))),
        "RK4, 50 steps over a unit-half interval")
    add("dF_dt", float(np.max(dF_dt_residual(4, xs, tab.t, 1e-3, cfg))), "n = 4, h = 1e-3")
    h = 1e-3
    y = zeros_Q(4, params, compute_recurrence(tab.t, 6, cfg)).array
    yp = zeros_Q(4, UvarovParams(tab.t + h, M), compute_recurrence(tab.t + h, 6, cfg)).array
    ym = zeros_Q(4, UvarovParams(tab.t - h, M), compute_recurrence(tab.t - h, 6, cfg)).array
    fd = (yp - ym) / (2 * h)
    add("motion_q", float(np.max(np.abs(motion_rhs_Q(y, "all", 4, params, tab) - fd))),
        "n = 4, central difference h = 1e-3")
    chain_fail = sum(not interlace_T1(m, tab).ok for m in range(1, min(7, tab.n_max // 2)))
    report = uvarov_monotonic_report(2, tab.t, [0.0, 0.01, 1.0, 100.0], tab)
    chain_fail += sum(c is False for c in report.chains_ok)
    add("interlacing", chain_fail, "T1 for m = 1..6 and the mass chains for m = 2")
    add("monotonicity", len(report.violations), "m = 2, M in {0, 0.01, 1, 100}")
    return results
