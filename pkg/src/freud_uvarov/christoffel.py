"""Polynomials orthogonal with respect to ``x^2 w_t(x) dx``.

These are the 2-iterated kernel polynomials ``F^[2]_n``.  They are tied to
the Freud family through ``x^2 F^[2]_n = F_{n+2} + xi_n^2 F_n`` and obey
``x F^[2]_n = F^[2]_{n+1} + alpha_n^2 F^[2]_{n-1}``.  Only the square of
``x`` is used as modifier: multiplying an even weight by ``x`` (or any odd
power) leaves a functional without an orthogonal sequence.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp
import numpy as np

from .polys import eval_F, recurrence_values, values_at_zero
from .recurrence import RecurrenceTable
from .tridiag import jacobi_zeros
from .weight import GUARD_DIGITS

__all__ = [
    "Christoffel2Coeffs",
    "InterlaceResult",
    "alpha_sq",
    "christoffel2_coeffs",
    "eval_F2",
    "interlace_T1",
    "t1_chain",
    "xi_sq",
    "zeros_F2",
    "zeros_G",
]

# below this |x| the division by x^2 is replaced by the alpha recurrence
DIVISION_SWITCH = 1e-4


@dataclass(frozen=True, eq=False)
class Christoffel2Coeffs:
    """``xi_sq[n]`` for ``n <= n_max - 2`` and ``alpha_sq[n]`` for ``n <= n_max - 3``.

    ``alpha_sq[0]`` is a placeholder zero.
    """

    xi_sq: tuple
    alpha_sq: tuple

    @property
    def alpha(self) -> np.ndarray:
        return np.array([float(v) for v in self.alpha_sq])


@lru_cache(maxsize=256)
def christoffel2_coeffs(tab: RecurrenceTable) -> Christoffel2Coeffs:
    f0, df0 = values_at_zero(tab)
    with mp.workdps(tab.working_digits + GUARD_DIGITS):
        xi = []
        for n in range(tab.n_max - 1):
            if n % 2:
                xi.append(-df0[n + 2] / df0[n])
            else:
                xi.append(-f0[n + 2] / f0[n])
        alpha = [mp.mpf(0)] + [xi[n] / xi[n - 1] * tab.a_sq[n] for n in range(1, tab.n_max - 2)]
    return Christoffel2Coeffs(tuple(xi), tuple(alpha))


def xi_sq(n: int, tab: RecurrenceTable):
    """Connection coefficient in ``x^2 F^[2]_n = F_{n+2} + xi_n^2 F_n``.

    Even ``n``: ``-F_{n+2}(0)/F_n(0)``; odd ``n``: ``-F_{n+2}'(0)/F_n'(0)``.
    """
    tab.check_degree(n, extra=2)
    return christoffel2_coeffs(tab).xi_sq[n]


def alpha_sq(n: int, tab: RecurrenceTable):
    """``alpha_n^2 = (xi_n^2 / xi_{n-1}^2) a_n^2``, for ``1 <= n <= n_max - 3``."""
    if n < 1:
        raise IndexError("alpha_n^2 needs n >= 1")
    tab.check_degree(n, extra=3)
    return christoffel2_coeffs(tab).alpha_sq[n]


def eval_F2(n: int, x, tab: RecurrenceTable):
    """Monic ``F^[2]_n(x)``.

    For ``|x| >= 1e-4`` this is ``(F_{n+2}(x) + xi_n^2 F_n(x)) / x^2``; closer
    to the origin the removable singularity is avoided by running the
    ``alpha`` recurrence instead.
    """
    tab.check_degree(n, extra=2)
    x = np.asarray(x, dtype=float)
    coeffs = christoffel2_coeffs(tab)
    far = np.abs(x) >= DIVISION_SWITCH
    out = np.empty(x.shape)
    if np.any(far):
        xf = x[far] if x.ndim else x
        vals = recurrence_values(tab.a2, n + 2, xf)[0]
        out_far = (vals[n + 2] + float(coeffs.xi_sq[n]) * vals[n]) / (xf * xf)
        if x.ndim:
            out[far] = out_far
        else:
            out = np.asarray(out_far)
    if np.any(~far):
        xn = x[~far] if x.ndim else x
        near = recurrence_values(coeffs.alpha, n, xn)[0, n]
        if x.ndim:
            out[~far] = near
        else:
            out = np.asarray(near)
    return float(out) if out.ndim == 0 else out


def zeros_F2(n: int, tab: RecurrenceTable) -> np.ndarray:
    """Zeros of ``F^[2]_n`` from its Jacobi matrix (off-diagonals ``alpha_k``)."""
    tab.check_degree(n, extra=2)
    x = jacobi_zeros(christoffel2_coeffs(tab).alpha, n)
    return (x - x[::-1]) / 2


def zeros_G(m: int, tab: RecurrenceTable) -> np.ndarray:
    """Zeros of ``G_{2m}(x) = x F^[2]_{2m-1}(x)`` (the origin appears twice)."""
    inner = zeros_F2(2 * m - 1, tab)
    inner[m - 1] = 0.0
    return np.sort(np.concatenate([inner, [0.0]]))


@dataclass(frozen=True)
class InterlaceResult:
    """Outcome of an interlacing check.

    ``witness`` lists ``(label, value)`` in the order the chain requires;
    ``failed_at`` is the position in ``witness`` of the first violated link.
    """

    ok: bool
    witness: tuple
    failed_at: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_chain(witness, equal_pairs=(), tol: float = 1e-12) -> InterlaceResult:
    """Verify that consecutive witness values increase strictly.

    ``equal_pairs`` holds positions ``i`` where ``witness[i]`` and
    ``witness[i+1]`` must coincide (within ``tol``) instead.
    """
    witness = tuple(witness)
    for i in range(len(witness) - 1):
        lo, hi = witness[i][1], witness[i + 1][1]
        good = abs(hi - lo) <= tol if i in equal_pairs else hi > lo
        if not good:
            return InterlaceResult(False, witness, i)
    return InterlaceResult(True, witness, None)


def t1_chain(x_zeros, g_zeros) -> InterlaceResult:
    """Check ``x_1 < g_1 < x_2 < ... < x_m < g_m = 0 = g_{m+1} < x_{m+1} < ... < g_{2m} < x_{2m}``."""
    x_zeros = np.asarray(x_zeros, dtype=float)
    g_zeros = np.asarray(g_zeros, dtype=float)
    two_m = len(x_zeros)
    if two_m % 2 or len(g_zeros) != two_m:
        raise ValueError("need 2m zeros of each polynomial")
    m = two_m // 2
    witness = []
    for k in range(m):
        witness.append((f"x{k + 1}", x_zeros[k]))
        witness.append((f"g{k + 1}", g_zeros[k]))
    witness.append((f"g{m + 1}", g_zeros[m]))
    for k in range(m, two_m):
        witness.append((f"x{k + 1}", x_zeros[k]))
        if k + 1 < two_m:
            witness.append((f"g{k + 2}", g_zeros[k + 1]))
    equal = {2 * m - 1}
    result = check_chain(witness, equal)
    if result.ok and abs(g_zeros[m - 1]) > 1e-12:
        return InterlaceResult(False, result.witness, 2 * m - 1)
    return result


def interlace_T1(m: int, tab: RecurrenceTable) -> InterlaceResult:
    """Interlacing of the zeros of ``F_{2m}`` and ``G_{2m} = x F^[2]_{2m-1}``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    tab.check_degree(2 * m, extra=1)
    x_zeros = jacobi_zeros(tab.a2, 2 * m)
    return t1_chain(x_zeros, zeros_G(m, tab))


def division_path(n: int, x, tab: RecurrenceTable):
    """``(F_{n+2}(x) + xi_n^2 F_n(x)) / x^2`` with no near-origin switch."""
    x = np.asarray(x, dtype=float)
    return (eval_F(n + 2, x, tab) + float(xi_sq(n, tab)) * eval_F(n, x, tab)) / (x * x)
