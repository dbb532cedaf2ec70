"""Eigenvalues of symmetric tridiagonal matrices by Sturm-sequence bisection.

Only the zero-diagonal case arises here (symmetric weights), but the
routines accept a general diagonal.
"""
from __future__ import annotations

import numpy as np

__all__ = ["eigenvalues_bisection", "jacobi_zeros", "sturm_count"]


def sturm_count(diag, off_sq, lam: float) -> int:
    """Number of eigenvalues strictly below ``lam``.

    ``off_sq[i]`` is the squared off-diagonal entry between rows ``i`` and
    ``i + 1``.  Counts negative pivots of the LDL^T factorisation of
    ``T - lam I``.
    """
    count = 0
    q = 1.0
    # a zero pivot is nudged to a small negative value; 1e-200 keeps the
    # next quotient finite for any sensible off-diagonal size
    tiny = 1e-200
    for i, d in enumerate(diag):
        q = d - lam - (off_sq[i - 1] / q if i else 0.0)
        if q == 0.0:
            q = -tiny
        if q < 0:
            count += 1
    return count


def eigenvalues_bisection(diag, off_sq, tol: float = 1e-12) -> np.ndarray:
    """All eigenvalues, ascending, each bracketed to width ``tol * max(1, |lam|)``."""
    diag = np.asarray(diag, dtype=float)
    off_sq = np.asarray(off_sq, dtype=float)
    n = len(diag)
    if n == 0:
        return np.zeros(0)
    if len(off_sq) != n - 1:
        raise ValueError("off_sq must have length len(diag) - 1")
    if np.any(off_sq < 0):
        raise ValueError("squared off-diagonal entries must be non-negative")
    off = np.sqrt(off_sq)
    radius = np.zeros(n)
    radius[:-1] += off
    radius[1:] += off
    lo_all = float(np.min(diag - radius)) - 1.0
    hi_all = float(np.max(diag + radius)) + 1.0
    out = np.empty(n)
    for k in range(n):
        lo, hi = lo_all, hi_all
        # invariant: count(lo) <= k < count(hi)
        while hi - lo > tol * max(1.0, abs(lo), abs(hi)):
            mid = 0.5 * (lo + hi)
            if mid in (lo, hi):
                break
            if sturm_count(diag, off_sq, mid) > k:
                hi = mid
            else:
                lo = mid
        out[k] = 0.5 * (lo + hi)
        lo_all = lo
    return out


def jacobi_zeros(coeffs, n: int, tol: float = 1e-12) -> np.ndarray:
    """Zeros of ``P_n`` for ``x P_k = P_{k+1} + c_k P_{k-1}`` (``c_1..c_{n-1} > 0``)."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    c = np.asarray(coeffs[1:n], dtype=float)
    if np.any(c <= 0):
        bad = int(np.argmax(c <= 0)) + 1
        raise ValueError(f"recurrence coefficient c_{bad} = {c[bad - 1]} is not positive")
    return eigenvalues_bisection(np.zeros(n), c, tol)
