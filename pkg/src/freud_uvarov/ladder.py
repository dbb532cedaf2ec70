"""Ladder operators and the holonomic equation of the Freud-type family.

Starting from ``x Q_n = A1 F_n + B1 F_{n-1}``, ``x Q_{n-1} = A2 F_n + B2 F_{n-1}``
and the matching derivative relations with ``C1, D1, C2, D2``, everything is
assembled as Laurent polynomials in ``x`` (``D1`` and ``C2`` carry ``1/x``
terms).  With ``Psi_ij = A_i D_j - B_i C_j`` and
``Delta = A1 B2 - B1 A2`` the lowering and raising relations read

    Delta Q_n'     + Psi21 Q_n     = Psi11 Q_{n-1}
    Psi12 Q_{n-1}  - Delta Q_{n-1}' = Psi22 Q_n

and eliminating ``Q_{n-1}`` gives ``A Q_n'' + B Q_n' + C Q_n = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import mpmath as mp
import numpy as np

from .laurent import LaurentPoly
from .polys import freud_derivatives
from .recurrence import RecurrenceTable
from .uvarov import UvarovParams, build_uvarov, eval_Q_derivatives
from .weight import GUARD_DIGITS

__all__ = [
    "build_ladder",
    "build_ode",
    "closed_form_even",
    "closed_form_general",
    "freud_ode_residual",
    "freud_ode_RS",
    "inversion_residual",
    "ladder_identity_residual",
    "ladder_params",
    "LadderCoeffs",
    "LadderParams",
    "ode_from_params",
    "ode_residual",
    "OdeCoeffs",
    "table_discrepancies",
    "table_ode_coeffs",
    "TranscriptionError",
    "wronskian",
]

# negative powers left after assembly must be below this fraction of the
# largest coefficient; anything bigger means a coefficient was mistyped
CANCEL_RTOL = 1e-8


class TranscriptionError(ArithmeticError):
    """The assembled ODE coefficients are not polynomials."""


@dataclass(frozen=True)
class LadderParams:
    """The six numbers every ladder coefficient depends on."""

    a_prev: object  # a_{n-1}^2
    a_cur: object   # a_n^2
    a_next: object  # a_{n+1}^2
    b_cur: object   # b_n
    b_prev: object  # b_{n-1}
    t: object


@dataclass(frozen=True)
class LadderCoeffs:
    A1: LaurentPoly
    B1: LaurentPoly
    C1: LaurentPoly
    D1: LaurentPoly
    A2: LaurentPoly
    B2: LaurentPoly
    C2: LaurentPoly
    D2: LaurentPoly
    Delta: LaurentPoly
    Psi11: LaurentPoly
    Psi12: LaurentPoly
    Psi21: LaurentPoly
    Psi22: LaurentPoly


@dataclass(frozen=True)
class OdeCoeffs:
    """Polynomial coefficients of ``A y'' + B y' + C y = 0``.

    ``meta`` records how the coefficients were obtained, in particular the
    Wronskian sign that passed validation.
    """

    A: LaurentPoly
    B: LaurentPoly
    C: LaurentPoly
    meta: dict = field(default_factory=dict, compare=False)

    def as_float(self) -> "OdeCoeffs":
        return OdeCoeffs(self.A.map(float), self.B.map(float), self.C.map(float), dict(self.meta))


def wronskian(f: LaurentPoly, g: LaurentPoly, sign: int = 1) -> LaurentPoly:
    """``f g' - f' g`` (``sign=+1``) or its negative (``sign=-1``)."""
    w = f * g.derivative() - f.derivative() * g
    return w if sign > 0 else -w


def _poly(terms: dict) -> LaurentPoly:
    return LaurentPoly.from_dict(terms)


def ladder_from_params(p: LadderParams) -> LadderCoeffs:
    """All ladder coefficients for free values of ``a``'s, ``b``'s and ``t``."""
    a0, a, a2, b, c, t = p.a_prev, p.a_cur, p.a_next, p.b_cur, p.b_prev, p.t
    A1 = _poly({1: 1})
    B1 = _poly({0: a * (b - 1)})
    C1 = _poly({2: -4 * a * b, 0: -4 * a * (b - 1) * (a0 + a - t)})
    D1 = _poly({3: 4 * a * b, 1: 4 * a * (a2 + b * (a - t)), -1: -a * (b - 1)})
    A2 = _poly({0: 1 - c})
    B2 = _poly({1: c})
    C2 = _poly({3: -4 * c, 1: 4 * a * (c - 1) - 4 * c * (a0 + a - t), -1: c - 1})
    D2 = _poly({4: 4 * c, 2: 4 * a * (1 - c) + 4 * c * (a - t),
                0: 4 * a * (1 - c) * (a + a2 - t)})
    Delta = A1 * B2 - B1 * A2
    return LadderCoeffs(
        A1, B1, C1, D1, A2, B2, C2, D2, Delta,
        Psi11=A1 * D1 - B1 * C1,
        Psi12=A1 * D2 - B1 * C2,
        Psi21=A2 * D1 - B2 * C1,
        Psi22=A2 * D2 - B2 * C2,
    )


def ladder_params(n: int, params: UvarovParams, tab: RecurrenceTable) -> LadderParams:
    """Extended-precision ``LadderParams`` for degree ``n``."""
    ut = build_uvarov(params, tab)
    if not 1 <= n <= ut.n_top:
        raise IndexError(f"n = {n} outside 1..{ut.n_top}")
    a = tab.a_sq
    return LadderParams(a[n - 1], a[n], a[n + 1], ut.b[n], ut.b[n - 1], mp.mpf(tab.t))


def build_ladder(n: int, params: UvarovParams, tab: RecurrenceTable) -> LadderCoeffs:
    """Ladder coefficients for ``Q_n`` with ``a_k^2``, ``b_k`` and ``t`` baked in."""
    p = ladder_params(n, params, tab)
    with mp.workdps(tab.working_digits + GUARD_DIGITS):
        return ladder_from_params(p)


def _strip_negative(poly: LaurentPoly, name: str, rtol: float) -> LaurentPoly:
    scale = poly.scale()
    terms = poly.terms()
    stray = {k: c for k, c in terms.items() if k < 0}
    worst = max((abs(float(c)) for c in stray.values()), default=0.0)
    if worst > rtol * scale:
        raise TranscriptionError(
            f"{name} keeps a negative power x^{min(stray)} of relative size {worst / scale:.3e}")
    return _poly({k: c for k, c in terms.items() if k >= 0})


def ode_from_params(p: LadderParams, sign: int = 1, rtol: float = CANCEL_RTOL) -> OdeCoeffs:
    """``A, B, C`` from the ladder coefficients with Wronskian sign ``sign``."""
    lc = ladder_from_params(p)
    P11, P12, P21, P22, D = lc.Psi11, lc.Psi12, lc.Psi21, lc.Psi22, lc.Delta
    A = P11 * D * D
    B = D * (wronskian(P11, D, sign) + P11 * (P21 - P12))
    C = D * wronskian(P11, P21, sign) + P11 * (P11 * P22 - P12 * P21)
    return OdeCoeffs(_strip_negative(A, "A", rtol), _strip_negative(B, "B", rtol),
                     _strip_negative(C, "C", rtol), {"wronskian_sign": sign})


def closed_form_general(p: LadderParams) -> tuple[LaurentPoly, LaurentPoly]:
    """``A`` and ``B`` from the closed forms valid for any ``n`` (free ``b_n, b_{n-1}``)."""
    pp, a, q, B, c, t = p.a_prev, p.a_cur, p.a_next, p.b_cur, p.b_prev, p.t
    A = {
        8: 4 * a * B * c ** 2,
        6: 4 * a * c * (B * (a * (2 * (1 - B) + c * (3 * B - 2)) - t * c) + q * c),
        4: a * (B - 1) * (
            4 * c * a * (c * ((B - 1) * pp + (1 - 3 * c) * t) + 2 * (c - 1) * q + 2 * t * B)
            + 4 * a ** 2 * ((3 * B ** 2 - 1) * c ** 2 + 2 * B * c * (1 - 2 * B) + (B - 1) * B)
            - c ** 2),
        2: 2 * a ** 2 * (c - 1) * (B - 1) ** 2 * (
            2 * a * (B * (t - B * a)
                     + c * (2 * (B - 1) * pp + a * (B * (B + 2) - 2) + t * (2 - 3 * B))
                     + q * (c - 1))
            - c),
        0: -a ** 3 * (c - 1) ** 2 * (B - 1) ** 3 * (1 - 4 * a * (B - 1) * (pp + a - t)),
    }
    Bc = {
        11: -16 * a * B * c ** 2,
        9: -16 * a * c * (B * (a * (c * (3 * B - 2) + 2 * (1 - B)) - 2 * t * c) + c * q),
        7: -4 * a * (
            c ** 2 * (1 - 4 * t * q + 4 * t ** 2 * B + B)
            + 4 * c * a * (c * ((B - 1) ** 2 * pp + t * (6 * (1 - B) * B - 1))
                           + 2 * (c - 1) * (B - 1) * q + 4 * t * (B - 1) * B)
            + 4 * (B - 1) * a ** 2 * ((3 * B ** 2 - 1) * c ** 2 + 2 * B * (1 - 2 * B) * c
                                      + (B - 1) * B)),
        5: -4 * (B - 1) * a * (
            2 * c * a * (c * (-2 * t * (B - 1) * pp + (6 * t ** 2 + 1) * B - 2 * t ** 2 + 1)
                         - 4 * t * q * (c - 1) - (4 * t ** 2 + 1) * B - 1)
            + 4 * a ** 2 * (2 * c * (t * (1 - 2 * B) ** 2 - pp * (B - 1) ** 2)
                            - c ** 2 * (-2 * pp * (B - 1) ** 2 + t * B * (6 * B - 5) + t)
                            + q * (B - 1) * (c - 1) ** 2 - 2 * t * (B - 1) * B)
            + 4 * a ** 3 * (c - 1) * (B - 1) * (c * (B * (B + 2) - 2) - B ** 2)
            + t * c ** 2),
        3: -2 * a * (B - 1) * (
            2 * a ** 2 * (B - 1) * (
                -2 * c * (-4 * t * pp * (B - 1) + 8 * t ** 2 * B + B - 4 * t ** 2 + 1)
                + c ** 2 * (-8 * t * pp * (B - 1) + 12 * t ** 2 * B + B - 8 * t ** 2 - 1)
                - 4 * t * q * (c - 1) ** 2 + 4 * t ** 2 * B + B + 1)
            - 8 * a ** 3 * (c - 1) * (B - 1) * (
                -(c - 1) * (pp * (B - 1) ** 2 - 2 * t * B ** 2) - t * (c - 2 * B + 1))
            + 4 * a * c * (B - 1) * (c * (2 * t - pp) - t)
            + 8 * a ** 4 * (c - 1) ** 2 * (B - 1) ** 3
            + c ** 2),
        1: -4 * a ** 2 * (c - 1) * (B - 1) ** 2 * (1 - 4 * a * (B - 1) * (pp + a - t))
           * (t * a * (c - 1) * (B - 1) + c),
    }
    return _poly(A), _poly(Bc)


def closed_form_even(p: LadderParams) -> tuple[LaurentPoly, LaurentPoly]:
    """``A`` and ``B`` from the closed forms for even degree (``b_{n-1} = 1``)."""
    pp, a, q, b, t = p.a_prev, p.a_cur, p.a_next, p.b_cur, p.t
    tail = (1 - 4 * a * (a + pp - t) * (b - 1)) * (b - 1)
    A = {8: 4 * a * b, 6: 4 * a * (q + b * (a * b - t)), 4: -a * tail}
    Bc = {
        11: -16 * a * b,
        9: -16 * a * (q + b * (a * b - 2 * t)),
        7: -4 * a * (1 - 4 * t * q + 4 * a ** 2 * (b - 1) ** 2 + b + 4 * t ** 2 * b
                     + 4 * a * (pp * (b - 1) ** 2 - t * (1 + 2 * (b - 1) * b))),
        5: -4 * t * a * tail,
        3: -2 * a * tail,
    }
    return _poly(A), _poly(Bc)


def _relative_gap(p: LaurentPoly, q: LaurentPoly) -> float:
    scale = max(p.scale(), q.scale())
    if scale == 0:
        return 0.0
    return (p - q).scale() / scale


def table_ode_coeffs(n: int, params: UvarovParams, tab: RecurrenceTable) -> OdeCoeffs:
    """``A`` and ``B`` from the tabulated closed forms, ``C`` from :func:`build_ode`.

    Even ``n`` uses the even-degree table; odd ``n`` the general one.
    """
    p = ladder_params(n, params, tab)
    with mp.workdps(tab.working_digits + GUARD_DIGITS):
        A, B = closed_form_even(p) if n % 2 == 0 else closed_form_general(p)
    C = build_ode(n, params, tab).C
    return OdeCoeffs(A, B, C, {"source": "even" if n % 2 == 0 else "general"})


def table_discrepancies(n: int, params: UvarovParams, tab: RecurrenceTable) -> dict:
    """Per-coefficient relative gaps between the symbolic build and both tables.

    Keys are ``(table, poly, power)``; gaps are relative to the largest
    coefficient of the symbolic polynomial.  The even-degree table is only
    reported for even ``n``.
    """
    p = ladder_params(n, params, tab)
    ode = build_ode(n, params, tab)
    out = {}
    with mp.workdps(tab.working_digits + GUARD_DIGITS):
        tables = {"general": closed_form_general(p)}
        if n % 2 == 0:
            tables["even"] = closed_form_even(p)
        for name, (A_ref, B_ref) in tables.items():
            for label, mine, ref, powers in (("A", ode.A, A_ref, range(0, 9, 2)),
                                             ("B", ode.B, B_ref, range(1, 12, 2))):
                scale = mine.scale() or 1.0
                for k in powers:
                    out[(name, label, k)] = abs(float(mine.coeff(k) - ref.coeff(k))) / scale
    return out


def _validate(ode: OdeCoeffs, p: LadderParams, n: int, rtol: float) -> float:
    """Discrepancy used to pick the Wronskian sign.

    Even ``n`` is compared with the even-degree table.  Odd ``n`` is compared
    with the Freud equation: ``B = A R_n`` must hold as rational functions.
    """
    if n % 2 == 0:
        A_ref, B_ref = closed_form_even(p)
        return max(_relative_gap(ode.A, A_ref), _relative_gap(ode.B, B_ref))
    x = np.array([0.37, 0.81, 1.23, 1.71])
    a, q, t = float(p.a_cur), float(p.a_next), float(p.t)
    R = -4 * (x ** 3 - t * x) - 2 * x / (x * x - t + a + q)
    A, B = ode.A.map(float)(x), ode.B.map(float)(x)
    return float(np.max(np.abs(B - A * R) / (np.abs(B) + np.abs(A * R))))


def build_ode(n: int, params: UvarovParams, tab: RecurrenceTable,
              rtol: float = CANCEL_RTOL) -> OdeCoeffs:
    """Holonomic equation ``A Q_n'' + B Q_n' + C Q_n = 0`` built from the ladder.

    The Wronskian ``W{f, g} = f g' - f' g`` is tried first and checked
    against an independent reference (see :func:`_validate`); if the check
    fails the opposite sign is tried once.  The sign that passes, and the
    discrepancy for each attempt, are stored in ``meta``.
    """
    p = ladder_params(n, params, tab)
    attempts = {}
    with mp.workdps(tab.working_digits + GUARD_DIGITS):
        for sign in (1, -1):
            ode = ode_from_params(p, sign, rtol)
            gap = _validate(ode, p, n, rtol)
            attempts[sign] = gap
            if gap <= rtol:
                ode.meta.update(validation_gap=gap, attempts=dict(attempts), n=n,
                                t=tab.t, M=params.M)
                return ode
    raise TranscriptionError(
        f"no Wronskian sign reproduces the reference coefficients at n = {n}: {attempts}")


def ode_residual(n: int, x, params: UvarovParams, tab: RecurrenceTable,
                 ode: OdeCoeffs | None = None, eps: float = 1e-300):
    """``|A Q'' + B Q' + C Q| / (|A Q''| + |B Q'| + |C Q| + eps)`` at ``x``."""
    ode = (ode or build_ode(n, params, tab)).as_float()
    x = np.asarray(x, dtype=float)
    q = eval_Q_derivatives(n, x, params, tab, 2)
    terms = (ode.A(x) * q[2], ode.B(x) * q[1], ode.C(x) * q[0])
    value = np.abs(sum(terms)) / (sum(np.abs(v) for v in terms) + eps)
    return float(value) if value.ndim == 0 else value


def freud_ode_RS(n: int, x, tab: RecurrenceTable, form: str = "derived"):
    """``(R_n(x), S_n(x))`` of ``F_n'' + R_n F_n' + S_n F_n = 0``.

    With ``g = x^2 - t + a_n^2 + a_{n+1}^2`` the structure relation gives
    ``R_n = -4(x^3 - t x) - 2x/g`` and

        S_n = 4 a_n^2 [1 - 2x^2/g + 4x^2 (a_{n-1}^2 + a_n^2 + a_{n+1}^2 - t)
                       + 4 (a_n^2 + a_{n+1}^2 - t)(a_{n-1}^2 + a_n^2 - t)]

    (``form="derived"``).  ``form="literal"`` uses the commonly quoted variant
    ``4 a_n^2 [4x^2 (a_{n-1}^2 + a_n^2 + a_{n+1}^2 - t - 2/g)
    + (a_n^2 + a_{n+1}^2 - t)(a_{n-1}^2 + a_n^2 - t) + 1]``, which does not
    annihilate ``F_n`` and is kept only to document the mismatch.
    """
    tab.check_degree(n, extra=1)
    if n < 1:
        raise IndexError("n must be >= 1")
    x = np.asarray(x, dtype=float)
    a0, a, a2, t = tab.a2[n - 1], tab.a2[n], tab.a2[n + 1], tab.t
    g = x * x - t + a + a2
    R = -4 * (x ** 3 - t * x) - 2 * x / g
    if form == "derived":
        S = 4 * a * (1 - 2 * x * x / g + 4 * x * x * (a0 + a + a2 - t)
                     + 4 * (a + a2 - t) * (a0 + a - t))
    elif form == "literal":
        S = 4 * a * (4 * x * x * (a0 + a + a2 - t - 2 / g) + (a + a2 - t) * (a0 + a - t) + 1)
    else:
        raise ValueError(f"unknown form {form!r}")
    return R, S


def freud_ode_residual(n: int, x, tab: RecurrenceTable, form: str = "derived", eps: float = 1e-300):
    """Normalised defect of ``F_n'' + R_n F_n' + S_n F_n = 0`` for the Freud family."""
    R, S = freud_ode_RS(n, x, tab, form)
    f = freud_derivatives(n, x, tab, 2)
    terms = (f[2], R * f[1], S * f[0])
    value = np.abs(sum(terms)) / (sum(np.abs(v) for v in terms) + eps)
    return float(value) if value.ndim == 0 else value


def ladder_identity_residual(n: int, x, params: UvarovParams, tab: RecurrenceTable,
                             method: str = "connection"):
    """Normalised residuals ``(lowering, raising)`` of the ladder relations at ``x != 0``."""
    x = np.asarray(x, dtype=float)
    if np.any(x == 0):
        raise ZeroDivisionError("ladder relations are checked away from x = 0")
    lc = build_ladder(n, params, tab)
    f = {name: getattr(lc, name).map(float)(x) for name in ("Delta", "Psi11", "Psi12", "Psi21", "Psi22")}
    qn = eval_Q_derivatives(n, x, params, tab, 1, method)
    qm = eval_Q_derivatives(n - 1, x, params, tab, 1, method)
    low = (f["Delta"] * qn[1], f["Psi21"] * qn[0], -f["Psi11"] * qm[0])
    rai = (f["Psi12"] * qm[0], -f["Delta"] * qm[1], -f["Psi22"] * qn[0])
    out = []
    for terms in (low, rai):
        value = np.abs(sum(terms)) / (sum(np.abs(v) for v in terms) + 1e-300)
        out.append(float(value) if value.ndim == 0 else value)
    return tuple(out)


def inversion_residual(n: int, x, params: UvarovParams, tab: RecurrenceTable):
    """Normalised residuals of the two relations expressing ``F_n``, ``F_{n-1}`` through ``Q``."""
    x = np.asarray(x, dtype=float)
    ut = build_uvarov(params, tab)
    ut.check_degree(n)
    bn, bp, a = ut.b_f[n], ut.b_f[n - 1], tab.a2[n]
    fn = freud_derivatives(n, x, tab, 0)[0]
    fm = freud_derivatives(n - 1, x, tab, 0)[0]
    qn = eval_Q_derivatives(n, x, params, tab, 0)[0]
    qm = eval_Q_derivatives(n - 1, x, params, tab, 0)[0]
    first = (x * bp * fn, -x * bp * qn, a * (bn - 1) * qm)
    second = (x * bp * fm, -(bp - 1) * qn, -x * qm)
    out = []
    for terms in (first, second):
        value = np.abs(sum(terms)) / (sum(np.abs(v) for v in terms) + 1e-300)
        out.append(float(value) if value.ndim == 0 else value)
    return tuple(out)
