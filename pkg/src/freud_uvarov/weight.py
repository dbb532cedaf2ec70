"""Quartic Freud weight, extended-precision quadrature and even moments.

The weight is ``w_t(x) = exp(-x**4 + 2*t*x**2)`` on the whole real line.
Everything downstream (recurrence coefficients, kernels, zeros) is derived
from a Gauss-Legendre discretisation of this weight on a truncated
symmetric interval ``[-R, R]``, carried out with :mod:`mpmath`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp
import numpy as np

__all__ = [
    "GUARD_DIGITS",
    "MomentTable",
    "MomentCheckError",
    "PrecisionConfig",
    "WeightParams",
    "compute_moments",
    "discretize",
    "eval_weight",
    "gauss_legendre",
    "pearson_residual",
    "truncation_radius",
]

# extra decimal digits carried on top of ``working_digits`` inside every
# extended-precision computation
GUARD_DIGITS = 10


class MomentCheckError(ArithmeticError):
    """Raised when the quadrature cross-check of a moment fails."""


@dataclass(frozen=True)
class WeightParams:
    """Potential parameter ``t`` of ``V_t(x) = x**4 - 2*t*x**2``."""

    t: float

    def __post_init__(self):
        check_t(self.t)


def check_t(t) -> None:
    if not mp.isfinite(t):
        raise ValueError(f"t must be finite, got {t!r}")
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t!r}")


@dataclass(frozen=True)
class PrecisionConfig:
    """Extended-precision settings shared by the moment and recurrence builders.

    ``quadrature_order`` is a lower bound on the number of Gauss-Legendre
    nodes; the builders raise it to ``4*n_max + 200`` and to ``4*working_digits``
    when those are larger.
    """

    working_digits: int = 80
    quadrature_order: int = 0

    def __post_init__(self):
        if int(self.working_digits) != self.working_digits or self.working_digits < 30:
            raise ValueError("working_digits must be an integer >= 30")
        if self.quadrature_order < 0:
            raise ValueError("quadrature_order must be non-negative")

    @property
    def dps(self) -> int:
        return self.working_digits + GUARD_DIGITS

    def node_count(self, n_max: int = 0) -> int:
        return max(self.quadrature_order, 4 * n_max + 200, 4 * self.working_digits)

    def workdps(self):
        return mp.workdps(self.dps)


def truncation_radius(t, cfg: PrecisionConfig, degree: int = 0):
    """Half-width ``R`` of the integration interval.

    ``R`` satisfies ``-R**4 + 2*t*R**2 + degree*ln(R) <= -(working_digits + 10)*ln(10)``,
    so the neglected tails of ``x**degree * w_t(x)`` sit below the working
    precision.  With ``degree=0`` this is the bare weight condition.
    """
    with cfg.workdps():
        t = mp.mpf(t)
        budget = (cfg.working_digits + GUARD_DIGITS) * mp.log(10)
        r = mp.sqrt(t + mp.sqrt(t * t + budget))
        for _ in range(50):
            extra = degree * mp.log(r) if r > 1 else 0
            new = mp.sqrt(t + mp.sqrt(t * t + budget + extra))
            if abs(new - r) < mp.mpf(10) ** (-cfg.working_digits):
                r = new
                break
            r = new
        return r


@lru_cache(maxsize=16)
def gauss_legendre(n: int, dps: int) -> tuple[tuple, tuple]:
    """Gauss-Legendre nodes and weights on ``[-1, 1]`` at ``dps`` digits.

    Seeds come from :func:`numpy.polynomial.legendre.leggauss` and are
    polished by Newton's method on the Legendre three-term recurrence.
    """
    if n < 2:
        raise ValueError("need at least two nodes")
    seeds, _ = np.polynomial.legendre.leggauss(n)
    with mp.workdps(dps):
        eps = mp.mpf(10) ** (-dps + 2)
        half_nodes, half_weights = [], []
        for seed in seeds[n // 2:]:
            x = mp.mpf(float(seed))
            for _ in range(8):
                p, dp = _legendre_with_derivative(n, x)
                step = p / dp
                x -= step
                if abs(step) < eps:
                    break
            p, dp = _legendre_with_derivative(n, x)
            half_nodes.append(x)
            half_weights.append(2 / ((1 - x * x) * dp * dp))
        nodes, weights = [], []
        start = 1 if n % 2 else 0
        for x, w in zip(reversed(half_nodes[start:]), reversed(half_weights[start:])):
            nodes.append(-x)
            weights.append(w)
        nodes.extend(half_nodes)
        weights.extend(half_weights)
        if n % 2:
            nodes[n // 2] = mp.mpf(0)
    return tuple(nodes), tuple(weights)


def _legendre_with_derivative(n, x):
    p0, p1 = mp.mpf(1), x
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    return p1, n * (x * p1 - p0) / (x * x - 1)


@lru_cache(maxsize=256)
def _discretize_cached(t_key: str, dps: int, n_nodes: int, radius_key: str):
    with mp.workdps(dps):
        t = mp.mpf(t_key)
        radius = mp.mpf(radius_key)
        ref_nodes, ref_weights = gauss_legendre(n_nodes, dps)
        nodes, weights = [], []
        for x, w in zip(ref_nodes, ref_weights):
            xx = radius * x
            x2 = xx * xx
            nodes.append(xx)
            weights.append(radius * w * mp.exp(x2 * (2 * t - x2)))
    return tuple(nodes), tuple(weights)


def discretize(t, cfg: PrecisionConfig, degree: int = 0, n_nodes: int | None = None):
    """Discrete measure ``(nodes, weights)`` approximating ``w_t(x) dx``.

    Sums ``sum(w * p(x))`` reproduce ``int p(x) w_t(x) dx`` to working
    precision for polynomials up to degree ``degree`` (and a bit beyond).
    """
    check_t(t)
    if n_nodes is None:
        n_nodes = cfg.node_count(degree // 2)
    with cfg.workdps():
        radius = truncation_radius(t, cfg, degree)
        return _discretize_cached(mp.nstr(mp.mpf(t), cfg.dps), cfg.dps, n_nodes,
                                  mp.nstr(radius, cfg.dps))


def eval_weight(x, t):
    """Evaluate ``exp(-x**4 + 2*t*x**2)``.

    Accepts scalars or arrays.  For large ``|x|`` the result underflows to
    ``0.0`` in double precision (around ``|x| > 5.2`` when ``t = 0``); use
    :func:`discretize` when tails matter.
    """
    x2 = np.multiply(x, x)
    value = np.exp(x2 * (2.0 * t - x2))
    return float(value) if np.ndim(value) == 0 else value


def pearson_residual(x: float, t: float, h: float) -> float:
    """Central-difference defect of ``w'(x) = (-4x**3 + 4tx) w(x)``."""
    if not h > 0:
        raise ValueError("step h must be positive")
    derivative = (eval_weight(x + h, t) - eval_weight(x - h, t)) / (2.0 * h)
    return abs(derivative - (-4.0 * x ** 3 + 4.0 * t * x) * eval_weight(x, t))


@dataclass(frozen=True)
class MomentTable:
    """Even moments ``mu[j] = int x**(2j) w_t(x) dx`` for ``j = 0..K``.

    Odd moments vanish by symmetry and are not stored.
    """

    t: float
    mu: tuple
    working_digits: int

    @property
    def K(self) -> int:
        return len(self.mu) - 1

    def moment(self, k: int):
        """Raw moment of order ``k`` (zero for odd ``k``)."""
        if k < 0 or k > 2 * self.K:
            raise IndexError(f"moment order {k} outside 0..{2 * self.K}")
        return mp.mpf(0) if k % 2 else self.mu[k // 2]

    def recursion_residual(self, j: int):
        """Relative defect of ``mu[j+2] = t*mu[j+1] + (2j+1)/4 * mu[j]``."""
        with mp.workdps(self.working_digits + GUARD_DIGITS):
            mu = self.mu
            t = mp.mpf(self.t)
            return abs(mu[j + 2] - t * mu[j + 1] - mp.mpf(2 * j + 1) / 4 * mu[j]) / mu[j + 2]


def _quadrature_moment(t, k: int, cfg: PrecisionConfig):
    nodes, weights = discretize(t, cfg, degree=k)
    with cfg.workdps():
        return mp.fsum(w * x ** k for x, w in zip(nodes, weights))


def compute_moments(t, K: int, cfg: PrecisionConfig | None = None) -> MomentTable:
    """Even moments up to ``mu_{2K}``.

    ``mu_0`` and ``mu_2`` come from quadrature; the rest from the forward
    recursion ``mu_{2j+4} = t*mu_{2j+2} + (2j+1)/4 * mu_{2j}`` obtained by
    integrating the Pearson equation by parts.  ``mu_4`` is checked against
    an independent quadrature to ``working_digits - 10`` digits.
    """
    cfg = cfg or PrecisionConfig()
    check_t(t)
    if K < 2:
        raise ValueError("K must be at least 2")
    with cfg.workdps():
        tt = mp.mpf(t)
        mu = [_quadrature_moment(t, 0, cfg), _quadrature_moment(t, 2, cfg)]
        for j in range(K - 1):
            mu.append(tt * mu[j + 1] + mp.mpf(2 * j + 1) / 4 * mu[j])
        mu4 = _quadrature_moment(t, 4, cfg)
        rel = abs(mu4 - mu[2]) / mu[2]
        if rel > mp.mpf(10) ** (-(cfg.working_digits - 10)):
            raise MomentCheckError(
                f"mu_4 recursion/quadrature mismatch {mp.nstr(rel, 5)} at t={t}; "
                "increase quadrature_order")
    return MomentTable(t=float(t), mu=tuple(mu), working_digits=cfg.working_digits)

