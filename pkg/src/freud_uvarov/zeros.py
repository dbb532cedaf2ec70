"""Zeros of the Freud, Freud-type and Christoffel families and their motion.

Zeros come from Jacobi matrices (Sturm bisection) polished by at most two
Newton steps.  Their evolution in ``t`` is integrated with classical RK4,
recomputing the recurrence data at every stage time.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .christoffel import check_chain, zeros_G
from .polys import Family, eval_F, freud_derivatives, kernel00, recurrence_values, values_at_zero
from .recurrence import RecurrenceTable, compute_recurrence
from .tridiag import jacobi_zeros
from .uvarov import UvarovParams, build_uvarov, eval_Q, eval_Q_derivatives
from .weight import GUARD_DIGITS, PrecisionConfig

__all__ = [
    "LimitRateReport",
    "MotionError",
    "MonotonicityReport",
    "Trajectory",
    "ZeroSet",
    "b_flat",
    "dF_dt_residual",
    "dQ_dt_residual",
    "integrate_motion",
    "interlace_mass_chain",
    "motion_rhs_F",
    "motion_rhs_Q",
    "newton_polish",
    "uvarov_monotonic_report",
    "zeros_F",
    "zeros_Q",
]

SIMPLE_GAP = 1e-10


class MotionError(ArithmeticError):
    """A denominator of the zero-motion equations vanished."""


@dataclass(frozen=True)
class ZeroSet:
    """Sorted, symmetric, simple zeros of one polynomial."""

    family: Family
    n: int
    t: float
    M: float
    values: tuple

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if len(v) != self.n:
            raise ValueError(f"expected {self.n} zeros, got {len(v)}")
        if self.n > 1 and np.min(np.diff(v)) <= SIMPLE_GAP:
            raise ValueError("zeros are not strictly increasing and simple")
        if self.n and np.max(np.abs(v + v[::-1])) > 1e-9 * (1 + np.max(np.abs(v))):
            raise ValueError("zeros are not symmetric about the origin")
        object.__setattr__(self, "values", tuple(float(x) for x in v))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.values)


def newton_polish(x0, fn, steps: int = 2) -> np.ndarray:
    """At most ``steps`` Newton steps per root, each halved until ``|f|`` drops.

    ``fn(x)`` returns ``(f(x), f'(x))`` for an array ``x``.
    """
    x = np.array(x0, dtype=float)
    for _ in range(steps):
        f, df = fn(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(df != 0, f / df, 0.0)
        for i in range(len(x)):
            lam = 1.0
            for _ in range(6):
                trial = x[i] - lam * step[i]
                ft = fn(np.array([trial]))[0][0]
                if abs(ft) <= abs(f[i]):
                    x[i] = trial
                    break
                lam *= 0.5
    return x


def _symmetrise(x: np.ndarray) -> np.ndarray:
    x = 0.5 * (x - x[::-1])
    return x


def zeros_F(n: int, tab: RecurrenceTable) -> ZeroSet:
    """Zeros of ``F_n`` (eigenvalues of the Jacobi matrix with off-diagonals ``a_k``)."""
    tab.check_degree(n, extra=1)
    x = jacobi_zeros(tab.a2, n)
    x = newton_polish(x, lambda z: tuple(freud_derivatives(n, z, tab, 1)))
    return ZeroSet(Family.FREUD, n, tab.t, 0.0, tuple(_symmetrise(x)))


def zeros_Q(n: int, params: UvarovParams, tab: RecurrenceTable) -> ZeroSet:
    """Zeros of ``Q_n`` from the ``gamma``-Jacobi matrix, polished on the connection formula."""
    ut = build_uvarov(params, tab)
    ut.check_degree(n)
    x = jacobi_zeros(ut.gamma_f, n)
    if n % 2 == 0 and params.M > 0:
        x = newton_polish(x, lambda z: tuple(eval_Q_derivatives(n, z, params, tab, 1)))
    else:
        x = newton_polish(x, lambda z: tuple(freud_derivatives(n, z, tab, 1)))
    return ZeroSet(Family.UVAROV, n, tab.t, params.M, tuple(_symmetrise(x)))


def _denominator_error(kind: str, values, den, tol: float):
    bad = np.flatnonzero(np.abs(np.atleast_1d(den)) <= tol)
    if bad.size:
        raise MotionError(f"{kind}: denominator vanishes at zero index {int(bad[0])} "
                          f"(y = {np.atleast_1d(values)[bad[0]]:.6g})")


def motion_rhs_F(x, n: int, t: float, tab: RecurrenceTable, tol: float = 1e-12):
    """``dx/dt = x / (2 (x^2 - t + a_n^2 + a_{n+1}^2))`` for a zero ``x`` of ``F_n``."""
    tab.check_degree(n, extra=1)
    x = np.asarray(x, dtype=float)
    den = 2 * (x * x - t + tab.a2[n] + tab.a2[n + 1])
    _denominator_error("motion of Freud zeros", x, den, tol)
    value = x / den
    return float(value) if value.ndim == 0 else value


def b_flat(n: int, params: UvarovParams, tab: RecurrenceTable):
    """Coefficient in ``dQ_n/dt = b_flat * Q_{n-2}`` (extended precision).

    ``-(2 / b_{n-2}) (a_n^2 a_{n-1}^2 + M F_n(0)^2 / ((1 + M K_{n-1}(0,0)) ||F_{n-2}||^2))``
    """
    if n < 2:
        raise IndexError("n must be >= 2")
    ut = build_uvarov(params, tab)
    ut.check_degree(n)
    f0 = values_at_zero(tab)[0]
    with mp.workdps(tab.working_digits + GUARD_DIGITS):
        a = tab.a_sq
        extra = params.M * f0[n] ** 2 / (ut.kappa[n] * tab.norm_sq[n - 2])
        return -2 / ut.b[n - 2] * (a[n] * a[n - 1] + extra)


def motion_rhs_Q(y, k, n: int, params: UvarovParams, tab: RecurrenceTable, tol: float = 1e-12):
    """Velocity ``dy/dt`` of the zero ``y = y_{n,k}`` of ``Q_n``.

    ``-y^2 b_flat (b_{n-2} / (b_{n-1} a_{n-1}^2)) Q_{n-1}(y) / (C_{k,1} F_n(y) + C_{k,2} F_{n-1}(y))``
    with ``C_{k,1} = 1 - 4 a_n^2 (b_n y^2 + (b_n - 1)(a_n^2 + a_{n-1}^2 - t))`` and
    ``C_{k,2} = 4 a_n^2 y (b_n (y^2 - t + a_n^2) + a_{n+1}^2)``.  ``k`` is only
    used in error messages; ``y = 0`` returns 0.
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if n == 1:
        return np.zeros_like(y) if y.size > 1 else 0.0
    ut = build_uvarov(params, tab)
    ut.check_degree(n)
    tab.check_degree(n, extra=1)
    t = tab.t
    a0, a, a2 = tab.a2[n - 1], tab.a2[n], tab.a2[n + 1]
    bn, bp, bpp = ut.b_f[n], ut.b_f[n - 1], ut.b_f[n - 2]
    flat = float(b_flat(n, params, tab))
    c1 = 1 - 4 * a * (bn * y * y + (bn - 1) * (a + a0 - t))
    c2 = 4 * a * y * (bn * (y * y - t + a) + a2)
    vals = recurrence_values(tab.a2, n, y)[0]
    den = c1 * vals[n] + c2 * vals[n - 1]
    num = -y * y * flat * (bpp / (bp * a0)) * eval_Q(n - 1, y, params, tab)
    centre = y == 0
    den_safe = np.where(centre, 1.0, den)
    _denominator_error(f"motion of Freud-type zero k={k}", y[~centre], den[~centre], tol)
    out = np.where(centre, 0.0, num / den_safe)
    return float(out[0]) if out.size == 1 else out


@dataclass(frozen=True)
class Trajectory:
    times: tuple
    zeros: tuple  # ZeroSet per time

    def to_rows(self):
        return [(t,) + z.values for t, z in zip(self.times, self.zeros)]


def integrate_motion(n: int, family: Family, params: UvarovParams, t0: float, t1: float,
                     steps: int, cfg: PrecisionConfig | None = None) -> Trajectory:
    """Classical RK4 for the zero-motion equations from ``t0`` to ``t1``.

    The starting zeros are computed directly at ``t0``.  Recurrence data are
    rebuilt at each stage time (memoised).  ``params.t`` is ignored; the
    mass ``params.M`` is used for the Freud-type family.
    """
    family = Family(family)
    if family is Family.CHRISTOFFEL2:
        raise ValueError("zero motion is available for the freud and uvarov families")
    if not (t0 > 0 and t1 > 0):
        raise ValueError("t0 and t1 must be positive")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    cfg = cfg or PrecisionConfig()
    n_max = n + 2
    M = params.M if family is Family.UVAROV else 0.0

    def tab_at(t):
        return compute_recurrence(t, n_max, cfg)

    def zeros_at(t):
        tab = tab_at(t)
        if family is Family.FREUD:
            return zeros_F(n, tab)
        return zeros_Q(n, UvarovParams(tab.t, M), tab)

    def rhs(t, y):
        tab = tab_at(t)
        if family is Family.FREUD:
            return np.atleast_1d(motion_rhs_F(y, n, t, tab))
        return np.atleast_1d(motion_rhs_Q(y, "all", n, UvarovParams(tab.t, M), tab))

    start = zeros_at(t0)
    if t0 == t1:
        return Trajectory((float(t0),), (start,))
    h = (t1 - t0) / steps
    y = start.array
    times, sets = [float(t0)], [start]
    for i in range(steps):
        t = t0 + i * h
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2, y + h / 2 * k1)
        k3 = rhs(t + h / 2, y + h / 2 * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t_next = t0 + (i + 1) * h
        times.append(float(t_next))
        sets.append(ZeroSet(family, n, float(t_next), M, tuple(y)))
    return Trajectory(tuple(times), tuple(sets))


def dF_dt_residual(n: int, x, t: float, h: float, cfg: PrecisionConfig | None = None):
    """``|(F_n(x;t+h) - F_n(x;t-h))/(2h) + 2 a_n^2 a_{n-1}^2 F_{n-2}(x;t)|``."""
    cfg = cfg or PrecisionConfig()
    if n < 1:
        raise IndexError("n must be >= 1")
    n_max = max(n + 1, 2)
    hi, mid, lo = (compute_recurrence(s, n_max, cfg) for s in (t + h, t, t - h))
    x = np.asarray(x, dtype=float)
    rate = (eval_F(n, x, hi) - eval_F(n, x, lo)) / ((t + h) - (t - h))
    if n == 1:
        value = np.abs(rate)
    else:
        value = np.abs(rate + 2 * mid.a2[n] * mid.a2[n - 1] * eval_F(n - 2, x, mid))
    return float(value) if np.ndim(value) == 0 else value


def dQ_dt_residual(n: int, x, params: UvarovParams, h: float, cfg: PrecisionConfig | None = None):
    """``|dQ_n/dt (central difference) - b_flat Q_{n-2}(x)|`` at fixed ``M``."""
    cfg = cfg or PrecisionConfig()
    if n < 2:
        raise IndexError("n must be >= 2")
    t = params.t
    n_max = n + 2
    hi, mid, lo = (compute_recurrence(s, n_max, cfg) for s in (t + h, t, t - h))
    x = np.asarray(x, dtype=float)
    q_hi = eval_Q(n, x, UvarovParams(hi.t, params.M), hi)
    q_lo = eval_Q(n, x, UvarovParams(lo.t, params.M), lo)
    rate = (q_hi - q_lo) / (hi.t - lo.t)
    value = np.abs(rate - float(b_flat(n, params, mid)) * eval_Q(n - 2, x, params, mid))
    return float(value) if np.ndim(value) == 0 else value


def interlace_mass_chain(x_zeros, y_zeros, g_zeros):
    """Check the two half-line chains relating zeros of ``F_{2m}``, ``Q_{2m}`` and ``G_{2m}``.

    Negative side ``x_1 < y_1 < g_1 < ... < g_{m-1} < x_m < y_m < g_m = 0``,
    positive side ``0 = g_{m+1} < y_{m+1} < x_{m+1} < g_{m+2} < ... < g_{2m} < y_{2m} < x_{2m}``.
    """
    x, y, g = (np.asarray(v, dtype=float) for v in (x_zeros, y_zeros, g_zeros))
    two_m = len(x)
    if two_m % 2 or len(y) != two_m or len(g) != two_m:
        raise ValueError("need 2m zeros of each polynomial")
    m = two_m // 2
    witness = []
    for k in range(m):
        witness += [(f"x{k + 1}", x[k]), (f"y{k + 1}", y[k]), (f"g{k + 1}", g[k])]
    witness.append((f"g{m + 1}", g[m]))
    for k in range(m, two_m):
        witness += [(f"y{k + 1}", y[k]), (f"x{k + 1}", x[k])]
        if k + 1 < two_m:
            witness.append((f"g{k + 2}", g[k + 1]))
    result = check_chain(witness, {3 * m - 1})
    return result


@dataclass(frozen=True)
class LimitRateReport:
    """Observed and predicted rates ``M |g - y(M)|`` for one zero as ``M`` grows.

    ``predicted`` follows the split factors ``G_m^l`` / ``G_m^r``;
    ``predicted_full`` uses the derivative of the whole ``G_{2m}`` (``None``
    when ``g`` is the double zero at the origin).
    """

    m: int
    t: float
    side: str
    index: int
    g: float
    masses: tuple
    observed: tuple
    predicted: float
    predicted_full: float | None


@dataclass(frozen=True)
class MonotonicityReport:
    m: int
    t: float
    masses: tuple
    zeros: tuple          # one tuple of 2m zeros per mass
    chains_ok: tuple      # interlacing result per mass (None where M = 0)
    monotone_ok: bool
    violations: tuple
    rates: tuple          # LimitRateReport per index


def _split_factor_derivative(g_zeros, index: int, m: int) -> tuple[float, float | None]:
    """``[G_m^side]'(g)`` and ``G_{2m}'(g)`` at ``g = g_zeros[index]`` (0-based index)."""
    g = g_zeros[index]
    if index < m:
        others = [g_zeros[k] for k in range(m - 1)]
    else:
        others = [g_zeros[k] for k in range(m + 1, 2 * m)]
    side = np.poly1d(np.poly([0.0] + others)).deriv()(g)
    whole = np.poly1d(np.poly(list(g_zeros))).deriv()(g)
    return float(side), (float(whole) if abs(g) > 1e-12 else None)


def uvarov_monotonic_report(m: int, t: float, M_grid, tab: RecurrenceTable,
                            rate_min_mass: float = 1e6) -> MonotonicityReport:
    """Monotonicity, interlacing and large-mass behaviour of the zeros of ``Q_{2m}``.

    Left zeros (``l <= m``) must increase with ``M`` and right zeros decrease.
    For masses ``>= rate_min_mass`` the products ``M (y - g)`` (right) and
    ``M (g - y)`` (left) are recorded next to both predicted limits.
    """
    masses = tuple(float(v) for v in M_grid)
    if any(b <= a for a, b in zip(masses, masses[1:])):
        raise ValueError("M_grid must be strictly increasing")
    n = 2 * m
    x = zeros_F(n, tab).array
    g = zeros_G(m, tab)
    sets, chains = [], []
    for M in masses:
        y = zeros_Q(n, UvarovParams(tab.t, M), tab).array
        sets.append(tuple(y))
        chains.append(interlace_mass_chain(x, y, g).ok if M > 0 else None)
    ys = np.array(sets)
    violations = []
    for j in range(1, len(masses)):
        for k in range(n):
            up = ys[j, k] > ys[j - 1, k]
            if (k < m) != up:
                violations.append((masses[j], k + 1))
    big = [j for j, M in enumerate(masses) if M >= rate_min_mass]
    rates = []
    if big:
        k00 = float(kernel00(n - 1, tab))
        for idx in range(n):
            side_d, whole_d = _split_factor_derivative(g, idx, m)
            f_g = eval_F(n, g[idx], tab)
            if idx < m:
                observed = tuple(masses[j] * (g[idx] - ys[j, idx]) for j in big)
                pred = f_g / (k00 * side_d)
                full = f_g / (k00 * whole_d) if whole_d is not None else None
                side = "left"
            else:
                observed = tuple(masses[j] * (ys[j, idx] - g[idx]) for j in big)
                pred = -f_g / (k00 * side_d)
                full = -f_g / (k00 * whole_d) if whole_d is not None else None
                side = "right"
            rates.append(LimitRateReport(m, tab.t, side, idx + 1, float(g[idx]),
                                         tuple(masses[j] for j in big), observed, pred, full))
    return MonotonicityReport(m, tab.t, masses, tuple(sets), tuple(chains),
                              not violations, tuple(violations), tuple(rates))
