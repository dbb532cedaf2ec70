"""Recurrence coefficients ``a_n^2(t)`` of the monic Freud polynomials.

The monic polynomials satisfy ``x F_n = F_{n+1} + a_n^2 F_{n-1}`` with
``F_{-1} = 0`` and ``F_0 = 1``.  The coefficients are obtained by the
discretised Stieltjes procedure at extended precision.  The nonlinear
string relation ``4 a_n^2 (a_{n-1}^2 + a_n^2 + a_{n+1}^2 - t) = n`` is only
used as an independent certificate: iterating it forward is violently
unstable.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import mpmath as mp
import numpy as np

from .weight import GUARD_DIGITS, PrecisionConfig, check_t, discretize

__all__ = [
    "RecurrenceError",
    "RecurrenceTable",
    "compute_recurrence",
    "string_residual",
    "toda_residual",
]


class RecurrenceError(ArithmeticError):
    """The Stieltjes procedure produced an unusable coefficient."""


@dataclass(frozen=True, eq=False)
class RecurrenceTable:
    """Extended-precision recurrence data for one value of ``t``.

    ``a_sq[n] = a_n^2`` for ``n = 0..n_max`` (``a_sq[0] = 0``),
    ``norm_sq[n] = ||F_n||^2`` and ``zeta[n] = a_1^2 ... a_n^2``.
    Instances are immutable; compare them by identity.
    """

    t: float
    n_max: int
    a_sq: tuple
    norm_sq: tuple
    zeta: tuple
    working_digits: int = 80
    max_mean: object = 0

    @cached_property
    def a2(self) -> np.ndarray:
        """``a_sq`` demoted to double precision."""
        return np.array([float(v) for v in self.a_sq])

    @cached_property
    def norms(self) -> np.ndarray:
        return np.array([float(v) for v in self.norm_sq])

    def check_degree(self, n: int, *, extra: int = 0) -> None:
        if n < 0 or n + extra > self.n_max:
            raise IndexError(
                f"degree {n} needs n_max >= {n + extra}, table has n_max = {self.n_max}")

    def with_a_sq(self, a_sq) -> "RecurrenceTable":
        """Copy with replaced coefficients (norms recomputed from ``zeta``)."""
        with mp.workdps(self.working_digits + GUARD_DIGITS):
            a_sq = tuple(mp.mpf(v) for v in a_sq)
            zeta = [mp.mpf(1)]
            for v in a_sq[1:]:
                zeta.append(zeta[-1] * v)
            norm_sq = tuple(self.norm_sq[0] * z for z in zeta)
        return RecurrenceTable(self.t, self.n_max, a_sq, norm_sq, tuple(zeta),
                               self.working_digits, self.max_mean)


def compute_recurrence(t, n_max: int, cfg: PrecisionConfig | None = None) -> RecurrenceTable:
    """Stieltjes procedure for ``a_n^2(t)``, ``n <= n_max``.

    The monic sequence is orthogonalised against a Gauss-Legendre
    discretisation of the weight with at least ``4*n_max + 200`` nodes.
    Raises :class:`RecurrenceError` if some ``a_n^2 <= 0`` or if the
    (theoretically vanishing) diagonal coefficients are not negligible.
    Results are memoised on ``(t, n_max, cfg)``.
    """
    cfg = cfg or PrecisionConfig()
    check_t(t)
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    with cfg.workdps():
        key = mp.nstr(mp.mpf(t), cfg.dps)
    return _compute_recurrence(key, int(n_max), cfg)


@lru_cache(maxsize=1024)
def _compute_recurrence(t_key: str, n_max: int, cfg: PrecisionConfig) -> RecurrenceTable:
    with cfg.workdps():
        t = mp.mpf(t_key)
        nodes, weights = discretize(t, cfg, degree=2 * n_max + 2,
                                    n_nodes=cfg.node_count(n_max))
        tol_mean = mp.mpf(10) ** (-cfg.working_digits + 10)
        p_prev = [mp.mpf(0)] * len(nodes)
        p_cur = [mp.mpf(1)] * len(nodes)
        norm_sq, a_sq = [], [mp.mpf(0)]
        max_mean = mp.mpf(0)
        for k in range(n_max + 1):
            wp2 = [w * p * p for w, p in zip(weights, p_cur)]
            norm = mp.fsum(wp2)
            mean = mp.fsum(x * v for x, v in zip(nodes, wp2)) / norm
            scale = mp.sqrt(a_sq[-1]) if k else mp.mpf(1)
            if abs(mean) > tol_mean * (1 + scale):
                raise RecurrenceError(
                    f"diagonal coefficient b_{k} = {mp.nstr(mean, 5)} is not negligible; "
                    "increase working_digits or quadrature_order")
            max_mean = max(max_mean, abs(mean))
            norm_sq.append(norm)
            if k:
                a_k = norm / norm_sq[k - 1]
                if not a_k > 0:
                    raise RecurrenceError(
                        f"a_{k}^2 = {mp.nstr(a_k, 5)} is not positive at t={t_key}; "
                        f"raise working_digits or quadrature_order (failing n = {k})")
                a_sq.append(a_k)
            if k < n_max:
                p_prev, p_cur = p_cur, [x * p - a_sq[k] * q
                                        for x, p, q in zip(nodes, p_cur, p_prev)]
        zeta = [mp.mpf(1)]
        for v in a_sq[1:]:
            zeta.append(zeta[-1] * v)
    return RecurrenceTable(float(t), n_max, tuple(a_sq), tuple(norm_sq), tuple(zeta),
                           cfg.working_digits, max_mean)


def string_residual(tab: RecurrenceTable, n: int) -> float:
    """``|4 a_n^2 (a_{n-1}^2 + a_n^2 + a_{n+1}^2 - t) - n|`` for ``1 <= n <= n_max - 1``."""
    if not 1 <= n <= tab.n_max - 1:
        raise IndexError(f"n = {n} outside 1..{tab.n_max - 1}")
    a = tab.a_sq
    with mp.workdps(tab.working_digits + GUARD_DIGITS):
        r = 4 * a[n] * (a[n - 1] + a[n] + a[n + 1] - mp.mpf(tab.t)) - n
        return float(abs(r))


def toda_residual(t, h, k: int, cfg: PrecisionConfig | None = None) -> float:
    """Defect of ``d a_k/dt = a_k (a_{k+1}^2 - a_{k-1}^2)`` with a central difference.

    ``a_k(t +- h)`` are recomputed from scratch; the difference quotient
    divides by the actual spacing of the two shifted arguments.
    """
    cfg = cfg or PrecisionConfig()
    if k < 1:
        raise ValueError("k must be >= 1")
    if not h > 0:
        raise ValueError("h must be positive")
    n_max = max(k + 1, 2)
    t_plus, t_minus = t + h, t - h
    check_t(t_minus)
    hi = compute_recurrence(t_plus, n_max, cfg)
    mid = compute_recurrence(t, n_max, cfg)
    lo = compute_recurrence(t_minus, n_max, cfg)
    with cfg.workdps():
        spacing = mp.mpf(t_plus) - mp.mpf(t_minus)
        rate = (mp.sqrt(hi.a_sq[k]) - mp.sqrt(lo.a_sq[k])) / spacing
        rhs = mp.sqrt(mid.a_sq[k]) * (mid.a_sq[k + 1] - mid.a_sq[k - 1])
        return float(abs(rate - rhs))
