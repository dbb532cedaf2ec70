"""Evaluation of Freud polynomials, their derivatives and kernels.

Values are produced in double precision from the three-term recurrence
(propagating derivatives alongside values).  Quantities at the origin and
explicit power-basis coefficients are built in extended precision, since
those feed exact-looking identities such as ``K_{2m-1}(0,0) = K_{2m-2}(0,0)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import mpmath as mp
import numpy as np

from .recurrence import RecurrenceTable
from .weight import GUARD_DIGITS

__all__ = [
    "Family",
    "PolyFamilyRef",
    "eval_F",
    "eval_F_prime",
    "eval_kernel",
    "freud_derivatives",
    "kernel00",
    "kernel_direct",
    "kernel_x0",
    "monic_coefficients",
    "recurrence_values",
    "structure_relation_residual",
    "values_at_zero",
]

# |x - y| below this (times 1 + |x|) switches the kernel to its confluent form
CONFLUENT_SWITCH = 1e-6


class Family(str, Enum):
    FREUD = "freud"
    UVAROV = "uvarov"
    CHRISTOFFEL2 = "christoffel2"


@dataclass(frozen=True)
class PolyFamilyRef:
    """Which polynomial family is meant, and with what parameters."""

    family: Family
    tab: RecurrenceTable
    M: float = 0.0

    def __post_init__(self):
        if self.family is Family.UVAROV and not self.M >= 0:
            raise ValueError("mass M must be non-negative")

    @property
    def t(self) -> float:
        return self.tab.t


def recurrence_values(coeffs, n: int, x, nderiv: int = 0) -> np.ndarray:
    """All ``P_0..P_n`` and derivatives for ``x P_k = P_{k+1} + c_k P_{k-1}``.

    ``coeffs[k]`` is ``c_k`` (``coeffs[0]`` is ignored).  Returns an array of
    shape ``(nderiv + 1, n + 1) + shape(x)`` where ``out[d, k]`` is the
    ``d``-th derivative of ``P_k``.
    """
    x = np.asarray(x, dtype=float)
    out = np.zeros((nderiv + 1, n + 1) + x.shape)
    out[0, 0] = 1.0
    if n >= 1:
        out[0, 1] = x
        if nderiv >= 1:
            out[1, 1] = 1.0
    for k in range(1, n):
        c = coeffs[k]
        for d in range(nderiv + 1):
            nxt = x * out[d, k] - c * out[d, k - 1]
            if d:
                nxt = nxt + d * out[d - 1, k]
            out[d, k + 1] = nxt
    return out


def freud_derivatives(n: int, x, tab: RecurrenceTable, nderiv: int = 2) -> np.ndarray:
    """``(F_n, F_n', ..., F_n^(nderiv))`` evaluated at ``x``."""
    tab.check_degree(n)
    return recurrence_values(tab.a2, n, x, nderiv)[:, n]


def eval_F(n: int, x, tab: RecurrenceTable):
    """Monic Freud polynomial ``F_n(x)``; ``F_n(-x) = (-1)^n F_n(x)``."""
    tab.check_degree(n)
    value = recurrence_values(tab.a2, n, x)[0, n]
    return float(value) if np.ndim(value) == 0 else value


def eval_F_prime(n: int, x, tab: RecurrenceTable):
    """``F_n'(x)`` from the differentiated recurrence."""
    tab.check_degree(n)
    value = recurrence_values(tab.a2, n, x, 1)[1, n]
    return float(value) if np.ndim(value) == 0 else value


def structure_relation_residual(n: int, x, tab: RecurrenceTable):
    """Relative defect of ``F_n' = -4 a_n^2 x F_n + 4 a_n^2 (x^2 - t + a_n^2 + a_{n+1}^2) F_{n-1}``."""
    tab.check_degree(n, extra=1)
    if n < 1:
        raise IndexError("structure relation needs n >= 1")
    vals = recurrence_values(tab.a2, n, x, 1)
    a2, t = tab.a2, tab.t
    x = np.asarray(x, dtype=float)
    lhs = vals[1, n]
    first = -4 * a2[n] * x * vals[0, n]
    second = 4 * a2[n] * (x * x - t + a2[n] + a2[n + 1]) * vals[0, n - 1]
    scale = np.abs(lhs) + np.abs(first) + np.abs(second)
    return np.abs(lhs - first - second) / np.where(scale > 0, scale, 1.0)


@lru_cache(maxsize=256)
def values_at_zero(tab: RecurrenceTable) -> tuple[tuple, tuple]:
    """Extended-precision ``(F_k(0), F_k'(0))`` for ``k = 0..n_max``."""
    a = tab.a_sq
    with mp.workdps(tab.working_digits + GUARD_DIGITS):
        f = [mp.mpf(1), mp.mpf(0)]
        df = [mp.mpf(0), mp.mpf(1)]
        for k in range(1, tab.n_max):
            f.append(-a[k] * f[k - 1])
            df.append(f[k] - a[k] * df[k - 1])
    return tuple(f[:tab.n_max + 1]), tuple(df[:tab.n_max + 1])


def monic_coefficients(n: int, tab: RecurrenceTable) -> list:
    """Power-basis coefficients of ``F_n`` (ascending), extended precision."""
    tab.check_degree(n)
    a = tab.a_sq
    with mp.workdps(tab.working_digits + GUARD_DIGITS):
        prev, cur = [], [mp.mpf(1)]
        for k in range(n):
            nxt = [mp.mpf(0)] + cur
            for i, c in enumerate(prev):
                nxt[i] -= a[k] * c
            prev, cur = cur, nxt
    return cur


@lru_cache(maxsize=256)
def _kernel00_table(tab: RecurrenceTable) -> tuple:
    f0, df0 = values_at_zero(tab)
    with mp.workdps(tab.working_digits + GUARD_DIGITS):
        out = []
        for n in range(tab.n_max):
            if n % 2:
                out.append(out[-1])
            else:
                out.append(df0[n + 1] * f0[n] / tab.norm_sq[n])
    return tuple(out)


def kernel00(n: int, tab: RecurrenceTable):
    """``K_n(0, 0; t) > 0`` in extended precision (``K_{-1} = 0``).

    Even ``n = 2m`` uses ``F_{2m+1}'(0) F_{2m}(0) / ||F_{2m}||^2``; odd ``n``
    repeats the preceding even value.
    """
    if n == -1:
        return mp.mpf(0)
    tab.check_degree(n, extra=1)
    return _kernel00_table(tab)[n]


def _orthonormal(tab: RecurrenceTable, n: int, x, nderiv: int) -> np.ndarray:
    # x p_k = a_{k+1} p_{k+1} + a_k p_{k-1},  p_0 = 1/sqrt(mu_0)
    a = np.sqrt(tab.a2)
    x = np.asarray(x, dtype=float)
    out = np.zeros((nderiv + 1, n + 1) + x.shape)
    out[0, 0] = 1.0 / np.sqrt(tab.norms[0])
    for k in range(n):
        for d in range(nderiv + 1):
            val = x * out[d, k]
            if d:
                val = val + d * out[d - 1, k]
            if k:
                val = val - a[k] * out[d, k - 1]
            out[d, k + 1] = val / a[k + 1]
    return out


def eval_kernel(n: int, x, y, tab: RecurrenceTable):
    """Christoffel-Darboux kernel ``K_n(x, y; t)``.

    Uses the Christoffel-Darboux quotient on orthonormal polynomials, and
    its confluent form at the midpoint when ``|x - y| < 1e-6 (1 + |x|)``.
    """
    tab.check_degree(n, extra=1)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    a_next = np.sqrt(tab.a2[n + 1])
    close = np.abs(x - y) < CONFLUENT_SWITCH * (1 + np.abs(x))
    px = _orthonormal(tab, n + 1, x, 0)[0]
    py = _orthonormal(tab, n + 1, y, 0)[0]
    with np.errstate(divide="ignore", invalid="ignore"):
        cd = a_next * (px[n + 1] * py[n] - px[n] * py[n + 1]) / (x - y)
    if np.any(close):
        mid = 0.5 * (x + y)
        pm = _orthonormal(tab, n + 1, mid, 1)
        confluent = a_next * (pm[1, n + 1] * pm[0, n] - pm[1, n] * pm[0, n + 1])
        cd = np.where(close, confluent, cd)
    return float(cd) if cd.ndim == 0 else cd


def kernel_direct(n: int, x, y, tab: RecurrenceTable):
    """``sum_{k<=n} F_k(x) F_k(y) / ||F_k||^2`` summed term by term."""
    tab.check_degree(n)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    px = _orthonormal(tab, n, x, 0)[0]
    py = _orthonormal(tab, n, y, 0)[0]
    value = np.sum(px * py, axis=0)
    return float(value) if np.ndim(value) == 0 else value


def kernel_x0(n: int, x, tab: RecurrenceTable, nderiv: int = 0) -> np.ndarray:
    """``K_n(x, 0; t)`` and its ``x``-derivatives, shape ``(nderiv + 1,) + shape(x)``.

    Only even-degree terms contribute since ``F_k(0) = 0`` for odd ``k``.
    """
    tab.check_degree(n)
    p = _orthonormal(tab, n, x, nderiv)
    p0 = _orthonormal(tab, n, 0.0, 0)[0]
    return np.einsum("k,dk...->d...", p0, p)
