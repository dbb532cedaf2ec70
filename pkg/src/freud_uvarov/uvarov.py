"""Freud-type polynomials: the Uvarov modification with a mass at the origin.

The inner product is ``<p, q>_t + M p(0) q(0)`` with ``M >= 0``.  Odd-degree
polynomials are untouched (they vanish at 0); even ones are corrected by a
multiple of the kernel ``K_{n-1}(x, 0; t)``.  Nothing here divides by ``M``,
so ``M = 0`` reproduces the Freud family exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import mpmath as mp
import numpy as np

from .christoffel import eval_F2
from .polys import freud_derivatives, kernel00, kernel_x0, recurrence_values, values_at_zero
from .recurrence import RecurrenceTable
from .weight import GUARD_DIGITS

__all__ = [
    "IdentityError",
    "UvarovParams",
    "UvarovTable",
    "build_uvarov",
    "connection_tilde",
    "eval_Q",
    "eval_Q_derivatives",
    "norm_ratio_Q",
    "perturbed_string_residual",
]


class IdentityError(ArithmeticError):
    """Two evaluations of the same polynomial disagree beyond tolerance."""


@dataclass(frozen=True)
class UvarovParams:
    t: float
    M: float

    def __post_init__(self):
        for name in ("t", "M"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            if value < 0:
                raise ValueError(f"{name} must be non-negative, got {value!r}")


@dataclass(frozen=True, eq=False)
class UvarovTable:
    """Coefficients of the Freud-type family, indexed by degree ``n = 0..n_max-1``.

    ``kappa[n] = 1 + M K_{n-1}(0,0;t)`` is the denominator shared by ``b_n``,
    ``Q_n(0)`` and the connection formula; ``kappa[2m]`` is the scale factor
    relating ``Q~_{2m}`` and ``Q_{2m}``.  ``gamma[0]`` is a placeholder zero.
    """

    M: float
    tab: RecurrenceTable
    b: tuple
    gamma: tuple
    q0: tuple
    norm_sq_Q: tuple
    kappa: tuple

    @property
    def n_top(self) -> int:
        return len(self.b) - 1

    @cached_property
    def b_f(self) -> np.ndarray:
        return np.array([float(v) for v in self.b])

    @cached_property
    def gamma_f(self) -> np.ndarray:
        return np.array([float(v) for v in self.gamma])

    def check_degree(self, n: int, *, extra: int = 0) -> None:
        if n < 0 or n + extra > self.n_top:
            raise IndexError(
                f"degree {n} needs n_max >= {n + extra + 1}, table has n_max = {self.tab.n_max}")


def build_uvarov(params: UvarovParams, tab: RecurrenceTable) -> UvarovTable:
    """``b_n``, ``gamma_n``, ``Q_n(0)``, ``||Q_n||^2`` and ``kappa`` for ``n < n_max``."""
    if abs(params.t - tab.t) > 1e-14 * (1 + abs(tab.t)):
        raise ValueError(f"parameter t = {params.t} does not match table t = {tab.t}")
    return _build_uvarov(float(params.M), tab)


@lru_cache(maxsize=512)
def _build_uvarov(M: float, tab: RecurrenceTable) -> UvarovTable:
    f0, _ = values_at_zero(tab)
    with mp.workdps(tab.working_digits + GUARD_DIGITS):
        mass = mp.mpf(M)
        top = tab.n_max - 1
        kappa = [1 + mass * kernel00(n - 1, tab) for n in range(top + 2)]
        b = [kappa[n + 1] / kappa[n] for n in range(top + 1)]
        # K_odd is copied from K_even, so b_odd is exactly one
        gamma = [mp.mpf(0)] + [b[n] / b[n - 1] * tab.a_sq[n] for n in range(1, top + 1)]
        q0 = [f0[n] / kappa[n] for n in range(top + 1)]
        norms = [b[n] * tab.norm_sq[n] for n in range(top + 1)]
    return UvarovTable(M, tab, tuple(b), tuple(gamma), tuple(q0), tuple(norms),
                       tuple(kappa[:top + 1]))


def eval_Q_derivatives(n: int, x, params: UvarovParams, tab: RecurrenceTable,
                       nderiv: int = 2, method: str = "connection") -> np.ndarray:
    """``(Q_n, Q_n', ..., Q_n^(nderiv))`` at ``x``, shape ``(nderiv + 1,) + shape(x)``.

    ``method="connection"`` uses the kernel correction of ``F_n``;
    ``method="recurrence"`` runs the three-term recurrence with ``gamma_k``.
    Derivatives are propagated analytically in both cases.
    """
    ut = build_uvarov(params, tab)
    ut.check_degree(n)
    x = np.asarray(x, dtype=float)
    if method == "recurrence":
        return recurrence_values(ut.gamma_f, n, x, nderiv)[:, n]
    if method != "connection":
        raise ValueError(f"unknown method {method!r}")
    out = freud_derivatives(n, x, tab, nderiv)
    if n % 2 or n == 0 or params.M == 0:
        return out
    with mp.workdps(tab.working_digits + GUARD_DIGITS):
        factor = float(params.M * values_at_zero(tab)[0][n] / ut.kappa[n])
    return out - factor * kernel_x0(n - 1, x, tab, nderiv)


def eval_Q(n: int, x, params: UvarovParams, tab: RecurrenceTable, method: str = "connection"):
    """Monic Freud-type polynomial ``Q_n(x)``.

    ``Q_{2m+1} = F_{2m+1}`` and
    ``Q_{2m} = F_{2m} - M F_{2m}(0) / (1 + M K_{2m-1}(0,0)) * K_{2m-1}(x, 0)``.
    """
    value = eval_Q_derivatives(n, x, params, tab, 0, method)[0]
    return float(value) if np.ndim(value) == 0 else value


def connection_tilde(m: int, x, params: UvarovParams, tab: RecurrenceTable,
                     rtol: float = 1e-9):
    """``Q~_{2m}(x) = F_{2m}(x) + M K_{2m-1}(0,0) x F^[2]_{2m-1}(x)``.

    The result is compared with ``kappa_{2m} Q_{2m}(x)``; a mismatch larger
    than ``rtol`` (relative to the magnitude of the terms) raises
    :class:`IdentityError`.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    tab.check_degree(2 * m, extra=2)
    x = np.asarray(x, dtype=float)
    k00 = float(kernel00(2 * m - 1, tab))
    fx = freud_derivatives(2 * m, x, tab, 0)[0]
    corr = params.M * k00 * x * eval_F2(2 * m - 1, x, tab)
    tilde = fx + corr
    ut = build_uvarov(params, tab)
    other = float(ut.kappa[2 * m]) * eval_Q(2 * m, x, params, tab)
    scale = np.abs(fx) + np.abs(corr) + 1e-300
    gap = np.max(np.abs(tilde - other) / scale)
    if gap > rtol:
        raise IdentityError(f"kappa*Q_{2 * m} and Q~_{2 * m} differ by {gap:.3e} (relative)")
    return float(tilde) if tilde.ndim == 0 else tilde


def norm_ratio_Q(n: int, params: UvarovParams, tab: RecurrenceTable):
    """``||Q_n||^2 / ||F_n||^2 = b_n``; exactly one for odd ``n``."""
    if n < 1:
        raise IndexError("n must be >= 1")
    ut = build_uvarov(params, tab)
    ut.check_degree(n)
    return ut.b[n]


def perturbed_string_residual(n: int, params: UvarovParams, tab: RecurrenceTable,
                              form: str = "derived") -> float:
    """Defect of the string equation rewritten in terms of ``gamma_k`` and ``b_k``.

    ``form="derived"`` substitutes ``a_k^2 = (b_{k-1}/b_k) gamma_k`` into
    ``4 a_n^2 (a_{n-1}^2 + a_n^2 + a_{n+1}^2 - t) = n``.

    ``form="literal"`` evaluates the literal expression
    ``4 gamma_n^2 ((b_{n-2}/b_n) gamma_{n-1}^2 + (b_{n-1}/b_n)^2 gamma_n^2
    + (b_{n-1}/b_{n+1}) gamma_{n+1}^2 - t/2) - n``.  It does not vanish even
    at ``M = 0`` and is kept for comparison only.
    """
    ut = build_uvarov(params, tab)
    if not 2 <= n <= ut.n_top - 1:
        raise IndexError(f"n = {n} outside 2..{ut.n_top - 1}")
    b, g = ut.b, ut.gamma
    with mp.workdps(tab.working_digits + GUARD_DIGITS):
        t = mp.mpf(tab.t)
        if form == "derived":
            r = 4 * (b[n - 1] / b[n]) * g[n] * (
                (b[n - 2] / b[n - 1]) * g[n - 1] + (b[n - 1] / b[n]) * g[n]
                + (b[n] / b[n + 1]) * g[n + 1] - t) - n
        elif form == "literal":
            r = 4 * g[n] ** 2 * (
                (b[n - 2] / b[n]) * g[n - 1] ** 2 + (b[n - 1] / b[n]) ** 2 * g[n] ** 2
                + (b[n - 1] / b[n + 1]) * g[n + 1] ** 2 - t / 2) - n
        else:
            raise ValueError(f"unknown form {form!r}")
        return float(abs(r))
