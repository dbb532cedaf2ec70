"""Orthogonal polynomials for the quartic Freud weight and its Uvarov modification.

The weight is ``w_t(x) = exp(-x**4 + 2 t x**2)`` on the real line.  Adding a
point mass ``M`` at the origin gives the Freud-type polynomials ``Q_n``.
The package provides extended-precision recurrence data, evaluation of
``F_n``, ``Q_n`` and the Christoffel transform ``F^[2]_n``, the ladder
operators and the holonomic equation of ``Q_n``, the electrostatic model of
the zeros, and the motion of the zeros in ``t``.
"""
from .christoffel import (alpha_sq, eval_F2, interlace_T1, xi_sq, zeros_F2, zeros_G)
from .electrostatics import build_u, equilibrium_residual
from .ladder import build_ladder, build_ode, ladder_identity_residual, ode_residual
from .polys import Family, eval_F, eval_F_prime, eval_kernel, kernel00
from .recurrence import RecurrenceTable, compute_recurrence, string_residual, toda_residual
from .uvarov import UvarovParams, build_uvarov, eval_Q, perturbed_string_residual
from .weight import PrecisionConfig, compute_moments, eval_weight
from .zeros import integrate_motion, motion_rhs_F, motion_rhs_Q, zeros_F, zeros_Q

__version__ = "0.1.0"

__all__ = [
    "Family",
    "PrecisionConfig",
    "RecurrenceTable",
    "UvarovParams",
    "alpha_sq",
    "build_ladder",
    "build_ode",
    "build_u",
    "build_uvarov",
    "compute_moments",
    "compute_recurrence",
    "equilibrium_residual",
    "eval_F",
    "eval_F2",
    "eval_F_prime",
    "eval_Q",
    "eval_kernel",
    "eval_weight",
    "integrate_motion",
    "interlace_T1",
    "kernel00",
    "ladder_identity_residual",
    "motion_rhs_F",
    "motion_rhs_Q",
    "ode_residual",
    "perturbed_string_residual",
    "string_residual",
    "toda_residual",
    "xi_sq",
    "zeros_F",
    "zeros_F2",
    "zeros_G",
    "zeros_Q",
]
