"""Electrostatic reading of the zeros of ``Q_{2m}``.

Dividing the holonomic equation by ``A`` at a zero ``y_i`` gives

    sum_{j != i} 1/(y_j - y_i) + u'(y_i)/(2 u(y_i)) - 1/y_i + 2(y_i^3 - t y_i) = 0,

i.e. the zeros are critical points of the energy of unit charges with
logarithmic interaction in the external potential
``V(x) = ln(u)/2 - ln(x^2 w_t(x))/2``.  The quartic
``u = 4 b x^4 + 4 x^2 ((a_{2m}^2 b - t) b + a_{2m+1}^2) + h`` with
``b = b_{2m}`` and ``h = (4 a_{2m}^2 (a_{2m}^2 + a_{2m-1}^2 - t)(b - 1) - 1)(b - 1)``
is ``Psi11 / a_{2m}^2`` from the ladder construction.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .recurrence import RecurrenceTable
from .uvarov import UvarovParams, build_uvarov
from .weight import GUARD_DIGITS
from .zeros import zeros_Q

__all__ = [
    "EquilibriumReport",
    "UPoly",
    "build_u",
    "electrostatic_field",
    "equilibrium_residual",
    "external_potential",
    "long_range_potential",
    "short_range_potential",
    "total_energy",
    "total_energy_gradient",
]


@dataclass(frozen=True)
class UPoly:
    """``u(x) = c4 x^4 + c2 x^2 + c0`` and its four roots.

    ``s_roots`` are the two roots of ``c4 s^2 + c2 s + c0`` (``s = x^2``),
    ascending when real.
    """

    m: int
    t: float
    M: float
    c4: float
    c2: float
    c0: float
    s_roots: tuple

    @property
    def coeffs(self) -> tuple:
        """Ascending coefficients ``(c0, 0, c2, 0, c4)``."""
        return (self.c0, 0.0, self.c2, 0.0, self.c4)

    @property
    def roots(self) -> np.ndarray:
        out = []
        for s in self.s_roots:
            r = np.sqrt(complex(s))
            out += [-r, r]
        return np.array(out)

    def table_values(self) -> tuple[float, float]:
        """``(sqrt|s_small|, sqrt|s_large|)``.

        The smaller ``s`` is normally negative (a purely imaginary pair),
        the larger one positive (a real pair); a double root at the origin
        shows up as ``0``.
        """
        lo, hi = sorted(self.s_roots, key=lambda s: complex(s).real)
        return float(np.sqrt(abs(lo))), float(np.sqrt(abs(hi)))

    @property
    def root_pattern(self) -> str:
        """One of ``"2 real + 2 imaginary"``, ``"double 0 + 2 imaginary"``,
        ``"double 0 + 2 real"``, ``"4 real"``, ``"4 imaginary"`` or ``"4 complex"``."""
        s = [complex(v) for v in self.s_roots]
        if any(v.imag != 0 for v in s):
            return "4 complex"
        kinds = sorted("zero" if v.real == 0 else ("real" if v.real > 0 else "imag") for v in s)
        return {
            ("imag", "real"): "2 real + 2 imaginary",
            ("imag", "zero"): "double 0 + 2 imaginary",
            ("real", "zero"): "double 0 + 2 real",
            ("real", "real"): "4 real",
            ("imag", "imag"): "4 imaginary",
            ("zero", "zero"): "quadruple 0",
        }[tuple(kinds)]

    @property
    def two_real_two_imaginary(self) -> bool:
        """Whether exactly one ``s`` root is positive and one negative."""
        return self.root_pattern == "2 real + 2 imaginary"

    def __call__(self, x, deriv: int = 0):
        x = np.asarray(x, dtype=float)
        if deriv == 0:
            value = (self.c4 * x * x + self.c2) * x * x + self.c0
        elif deriv == 1:
            value = (4 * self.c4 * x * x + 2 * self.c2) * x
        else:
            raise ValueError("only u and u' are provided")
        return float(value) if value.ndim == 0 else value


def build_u(m: int, params: UvarovParams, tab: RecurrenceTable) -> UPoly:
    """Coefficients and roots of ``u(x, t; 2m)`` (needs ``2m + 1 <= n_max``)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    n = 2 * m
    tab.check_degree(n, extra=1)
    ut = build_uvarov(params, tab)
    ut.check_degree(n)
    a = tab.a_sq
    with mp.workdps(tab.working_digits + GUARD_DIGITS):
        b = ut.b[n]
        t = mp.mpf(tab.t)
        c4 = 4 * b
        c2 = 4 * ((a[n] * b - t) * b + a[n + 1])
        c0 = (4 * a[n] * (a[n] + a[n - 1] - t) * (b - 1) - 1) * (b - 1)
        disc = c2 * c2 - 4 * c4 * c0
        if disc >= 0:
            root = mp.sqrt(disc)
            # stable pair: avoid cancellation between -c2 and the square root
            qq = -(c2 + mp.sign(c2) * root) / 2 if c2 != 0 else -root / 2
            s1 = qq / c4
            s2 = c0 / qq if qq != 0 else mp.mpf(0)
            s_roots = tuple(sorted((float(s1), float(s2))))
        else:
            root = mp.sqrt(-disc) * 1j
            s_roots = (complex((-c2 - root) / (2 * c4)), complex((-c2 + root) / (2 * c4)))
    return UPoly(m, tab.t, params.M, float(c4), float(c2), float(c0), s_roots)


@dataclass(frozen=True)
class EquilibriumReport:
    """Per-zero equilibrium residuals ``E_i``.

    ``collisions`` lists (0-based) indices where ``u(y_i) = 0``; their
    residual is reported as ``nan`` and ``max_abs`` becomes ``inf``.
    """

    zeros: tuple
    residuals: tuple
    collisions: tuple

    @property
    def max_abs(self) -> float:
        if self.collisions:
            return float("inf")
        return float(np.max(np.abs(self.residuals))) if self.residuals else 0.0


def equilibrium_residual(m: int, params: UvarovParams, tab: RecurrenceTable,
                         zeros=None) -> EquilibriumReport:
    """``E_i`` at the zeros of ``Q_{2m}`` (or at the supplied ``zeros``)."""
    u = build_u(m, params, tab)
    y = np.asarray(zeros if zeros is not None else zeros_Q(2 * m, params, tab).array, dtype=float)
    uy = u(y)
    collisions = tuple(int(i) for i in np.flatnonzero(uy == 0))
    res = []
    for i, yi in enumerate(y):
        if i in collisions:
            res.append(float("nan"))
            continue
        others = np.delete(y, i)
        res.append(float(np.sum(1.0 / (others - yi)) + 0.5 * u(yi, 1) / uy[i] - 1.0 / yi
                         + 2.0 * (yi ** 3 - tab.t * yi)))
    return EquilibriumReport(tuple(float(v) for v in y), tuple(res), collisions)


def short_range_potential(x, u: UPoly):
    """``ln(u(x)) / 2``."""
    ux = np.asarray(u(x))
    if np.any(ux <= 0):
        raise ValueError("u(x) must be positive for the logarithm")
    value = 0.5 * np.log(ux)
    return float(value) if value.ndim == 0 else value


def long_range_potential(x, t: float):
    """``-ln(x^2 w_t(x)) / 2 = -ln|x| + (x^4 - 2 t x^2) / 2``, computed without underflow."""
    x = np.asarray(x, dtype=float)
    if np.any(x == 0):
        raise ValueError("the long range potential is singular at x = 0")
    value = -np.log(np.abs(x)) + 0.5 * (x ** 4 - 2 * t * x * x)
    return float(value) if value.ndim == 0 else value


def external_potential(x, m: int, params: UvarovParams, tab: RecurrenceTable):
    """``V_ext(x) = ln u(x,t;2m) / 2 - ln(x^2 w_t(x)) / 2``."""
    u = build_u(m, params, tab)
    return short_range_potential(x, u) + long_range_potential(x, tab.t)


def electrostatic_field(x, u: UPoly, t: float):
    """``V_ext'(x) = u'/(2u) - 1/x + 2(x^3 - t x)``."""
    x = np.asarray(x, dtype=float)
    value = 0.5 * u(x, 1) / u(x) - 1.0 / x + 2.0 * (x ** 3 - t * x)
    return float(value) if value.ndim == 0 else value


def total_energy(y, u: UPoly, t: float) -> float:
    """``-sum_{i<j} ln|y_i - y_j| + sum_i V_ext(y_i)``."""
    y = np.asarray(y, dtype=float)
    i, j = np.triu_indices(len(y), 1)
    mutual = -np.sum(np.log(np.abs(y[i] - y[j])))
    return float(mutual + np.sum(short_range_potential(y, u) + long_range_potential(y, t)))


def total_energy_gradient(y, u: UPoly, t: float) -> np.ndarray:
    """Analytic gradient of :func:`total_energy`; equals the vector of ``E_i``."""
    y = np.asarray(y, dtype=float)
    diff = y[None, :] - y[:, None]
    np.fill_diagonal(diff, np.inf)
    return np.sum(1.0 / diff, axis=1) + np.atleast_1d(electrostatic_field(y, u, t))
