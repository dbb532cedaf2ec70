"""Laurent polynomials in one variable ``x`` with a finite number of terms.

Coefficients are arbitrary numbers (``mpmath.mpf`` during assembly,
``float`` afterwards), stored densely from the lowest power upwards.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["LaurentPoly"]


def _is_zero(c) -> bool:
    return c == 0


@dataclass(frozen=True)
class LaurentPoly:
    """``sum_k coeffs[k] * x**(min_exp + k)`` in canonical (trimmed) form."""

    min_exp: int
    coeffs: tuple

    def __post_init__(self):
        coeffs = list(self.coeffs)
        lo = 0
        while lo < len(coeffs) and _is_zero(coeffs[lo]):
            lo += 1
        hi = len(coeffs)
        while hi > lo and _is_zero(coeffs[hi - 1]):
            hi -= 1
        trimmed = tuple(coeffs[lo:hi])
        object.__setattr__(self, "coeffs", trimmed)
        object.__setattr__(self, "min_exp", self.min_exp + lo if trimmed else 0)

    @classmethod
    def monomial(cls, c, k: int = 0) -> "LaurentPoly":
        return cls(k, (c,))

    @classmethod
    def from_dict(cls, terms: dict) -> "LaurentPoly":
        if not terms:
            return cls(0, ())
        lo, hi = min(terms), max(terms)
        return cls(lo, tuple(terms.get(k, 0) for k in range(lo, hi + 1)))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1

    def coeff(self, k: int):
        i = k - self.min_exp
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def terms(self) -> dict:
        return {self.min_exp + i: c for i, c in enumerate(self.coeffs) if not _is_zero(c)}

    def _combine(self, other, sign: int) -> "LaurentPoly":
        other = _coerce(other)
        if self.is_zero:
            return other if sign > 0 else -other
        if other.is_zero:
            return self
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.max_exp, other.max_exp)
        out = [self.coeff(k) + sign * other.coeff(k) for k in range(lo, hi + 1)]
        return LaurentPoly(lo, tuple(out))

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return _coerce(other)._combine(self, -1)

    def __neg__(self):
        return LaurentPoly(self.min_exp, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return LaurentPoly(0, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            for j, d in enumerate(other.coeffs):
                out[i + j] = out[i + j] + c * d
        return LaurentPoly(self.min_exp + other.min_exp, tuple(out))

    __rmul__ = __mul__

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly(self.min_exp - 1,
                           tuple((self.min_exp + i) * c for i, c in enumerate(self.coeffs)))

    def map(self, fn) -> "LaurentPoly":
        """Apply ``fn`` to every coefficient (e.g. ``float`` to demote precision)."""
        return LaurentPoly(self.min_exp, tuple(fn(c) for c in self.coeffs))

    def scale(self) -> float:
        return max((abs(float(c)) for c in self.coeffs), default=0.0)

    def cancel(self, rtol: float) -> "LaurentPoly":
        """Drop coefficients below ``rtol`` times the largest one."""
        cut = rtol * self.scale()
        return LaurentPoly(self.min_exp,
                           tuple(0 if abs(float(c)) <= cut else c for c in self.coeffs))

    def parity_defect(self, parity: int) -> float:
        """Largest coefficient of the wrong parity, relative to the largest overall.

        ``parity`` is 0 for an even function and 1 for an odd one.
        """
        scale = self.scale()
        if scale == 0:
            return 0.0
        bad = [abs(float(c)) for k, c in self.terms().items() if k % 2 != parity]
        return max(bad, default=0.0) / scale

    def __call__(self, x):
        """Evaluate at ``x != 0`` (any power is allowed, so the origin is rejected
        only when negative powers are present)."""
        x = np.asarray(x, dtype=float)
        if self.min_exp < 0 and np.any(x == 0):
            raise ZeroDivisionError("Laurent polynomial with negative powers evaluated at 0")
        acc = np.zeros(x.shape)
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        value = acc * x ** float(self.min_exp) if self.min_exp else acc
        return float(value) if value.ndim == 0 else value

    def __repr__(self):
        if self.is_zero:
            return "LaurentPoly(0)"
        parts = [f"{float(c):+.6g}*x^{k}" for k, c in sorted(self.terms().items(), reverse=True)]
        return "LaurentPoly(" + " ".join(parts) + ")"


def _coerce(value) -> LaurentPoly:
    return value if isinstance(value, LaurentPoly) else LaurentPoly.monomial(value)


X = LaurentPoly.monomial(1, 1)
